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

#include "qrecon/metric.hpp"

namespace {

using namespace qrecon;

template <double (*Metric)(const StateVector&, const Tangent&)>
void metric(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  CounterRng g(3);
  const auto psi = randomState(n, g);
  const auto d = randomTangent(psi, g);
  for (auto _ : state) benchmark::DoNotOptimize(Metric(psi, d));
}

double closedForm(const StateVector& psi, const Tangent& d) { return extendedFisherMetric(psi, d); }
double recursive(const StateVector& psi, const Tangent& d) { return extendedFisherMetricRecursive(psi, d); }
double fubiniStudy(const StateVector& psi, const Tangent& d) { return fubiniStudyMetric(psi, d); }

BENCHMARK(metric<closedForm>)->Name("BM_ExtendedFisher")->DenseRange(2, 14, 4);
BENCHMARK(metric<recursive>)->Name("BM_ExtendedFisherRecursive")->DenseRange(2, 14, 4);
BENCHMARK(metric<fubiniStudy>)->Name("BM_FubiniStudy")->DenseRange(2, 14, 4);

}  // namespace
