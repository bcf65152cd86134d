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

#include <stdexcept>
#include <string>

namespace qrecon {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Bit index or level pushed past the edge of the model.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A coordinate or derivative is undefined at this point (zero mass,
/// chart pole, degenerate image).
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Request refused because exhaustive work would blow up.
class RefusalError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace qrecon
