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

#pragma once

#include <cstddef>
#include <functional>

namespace qrecon {

/// Worker count used by parallel loops. Defaults to the QR_THREADS
/// environment variable when set, otherwise the hardware concurrency.
unsigned threadCount();

/// Overrides the worker count for the calling process; 0 restores the default.
void setThreadCount(unsigned n);

/// Runs body(i) for i in [0, count). Iterations are split into contiguous
/// chunks; every index is visited exactly once, so results that depend only
/// on i are independent of the worker count.
void parallelFor(std::size_t count, const std::function<void(std::size_t)>& body,
                 unsigned workers = 0);

}  // namespace qrecon
