// Copyright 2026 The qrecon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <algorithm>

#include <Eigen/Dense>

#include "qrecon/bits.hpp"
#include "qrecon/butterfly.hpp"

namespace {

using namespace qrecon;

void BM_DenseTransform(benchmark::State& state) {
  const int n = log2Exact(static_cast<std::uint64_t>(state.range(0)));
  const auto F = assembleTransform(n, OutputOrder::natural);
  CounterRng g(1);
  const auto psi = randomState(n, g);
  const Eigen::Map<const Eigen::VectorXcd> x(psi.amps().data(), static_cast<Eigen::Index>(psi.size()));
  Eigen::VectorXcd y(x.size());
  for (auto _ : state) {
    y.noalias() = F * x;
    benchmark::DoNotOptimize(y.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DenseTransform)->RangeMultiplier(4)->Range(4, 4096)->Complexity(benchmark::oNSquared);

void butterfly(benchmark::State& state, ExecutionMode mode) {
  const int n = log2Exact(static_cast<std::uint64_t>(state.range(0)));
  const ButterflyPlan plan(n);
  CounterRng g(1);
  const auto psi = randomState(n, g);
  ComplexVector work(psi.size());
  for (auto _ : state) {
    std::copy(psi.amps().begin(), psi.amps().end(), work.begin());
    applyButterflyInPlace(plan, work, OutputOrder::natural, mode);
    benchmark::DoNotOptimize(work.data());
  }
  state.SetComplexityN(state.range(0));
}

void BM_ButterflySerial(benchmark::State& state) { butterfly(state, ExecutionMode::serial); }
BENCHMARK(BM_ButterflySerial)->RangeMultiplier(4)->Range(4, 1 << 20)->Complexity(benchmark::oNLogN);

void BM_ButterflyForkJoin(benchmark::State& state) { butterfly(state, ExecutionMode::forkJoin); }
BENCHMARK(BM_ButterflyForkJoin)->RangeMultiplier(16)->Range(1 << 12, 1 << 20);

void BM_ChainPropagate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  CounterRng g(2);
  const auto psi = randomState(n, g);
  for (auto _ : state) benchmark::DoNotOptimize(chainPropagate(psi));
}
BENCHMARK(BM_ChainPropagate)->DenseRange(4, 12, 4);

}  // namespace

BENCHMARK_MAIN();
