// Copyright 2026 The ladder-nonlocality Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ladder {

// Input outside the mathematical domain of an operation (product states,
// degenerate settings, malformed chains).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Parameters whose intermediate powers or enumeration sizes leave the
// supported range.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

// Iterative solver gave up. Carries the last residual.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// A computed result failed a self-check that holds analytically.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ladder
