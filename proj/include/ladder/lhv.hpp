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

// Classical side of the ladder argument.
//
// A deterministic local model assigns a fixed +/-1 outcome to every observable
// A_0..A_K and B_0..B_K. Any stochastic local model is a convex mixture of
// these, so the maximum of a linear combination of probabilities over all
// local models is attained on a deterministic assignment and exhaustive
// enumeration of the 4^(K+1) assignments certifies the classical bound.
//
// Assignments are indexed by a (2K+2)-bit integer: bit k holds A_k and bit
// K+1+k holds B_k, a clear bit meaning +1. All sums here are exact integers.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <future>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ladder/errors.hpp"
#include "ladder/ladder.hpp"

namespace ladder {

inline constexpr int kMaxEnumeratedRungs = 12;

struct LhvAssignment {
  std::vector<int> a_values;  // A_0 .. A_K, each +1 or -1
  std::vector<int> b_values;  // B_0 .. B_K

  int k_max() const noexcept { return static_cast<int>(a_values.size()) - 1; }

  static LhvAssignment from_index(int k_max, std::uint64_t index) {
    LhvAssignment out;
    const auto n = static_cast<std::size_t>(k_max) + 1;
    out.a_values.resize(n);
    out.b_values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      out.a_values[i] = ((index >> i) & 1U) ? -1 : 1;
      out.b_values[i] = ((index >> (n + i)) & 1U) ? -1 : 1;
    }
    return out;
  }

  std::uint64_t index() const {
    const auto n = a_values.size();
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (a_values[i] == -1) out |= std::uint64_t{1} << i;
      if (b_values[i] == -1) out |= std::uint64_t{1} << (n + i);
    }
    return out;
  }

  bool valid() const noexcept {
    if (a_values.empty() || a_values.size() != b_values.size()) return false;
    const auto pm = [](int v) { return v == 1 || v == -1; };
    return std::all_of(a_values.begin(), a_values.end(), pm) &&
           std::all_of(b_values.begin(), b_values.end(), pm);
  }
};

struct LhvBound {
  double max_s = 0.0;
  LhvAssignment argmax;
  std::uint64_t assignments_checked = 0;
};

// One required product A_a * B_b = required.
struct ProductConstraint {
  int a_index;
  int b_index;
  int required;
};

struct ContradictionRecord {
  int k_max = 0;
  int lhs_product = 0;  // forced product of the left-hand sides, +1
  int rhs_product = 0;  // product of the required values, -1
  std::optional<std::uint64_t> satisfying;  // only when enumerated
  std::uint64_t assignments_checked = 0;
};

namespace detail {

inline void check_enumerable(int k) {
  if (k < 1 || k > kMaxEnumeratedRungs) {
    throw RangeError("exhaustive enumeration needs K in [1, " +
                     std::to_string(kMaxEnumeratedRungs) + "], got " + std::to_string(k));
  }
}

inline std::uint64_t assignment_count(int k) { return std::uint64_t{1} << (2 * k + 2); }

// Bit views of an assignment index: bit set means -1.
struct Bits {
  std::uint64_t index;
  int n;  // K + 1

  bool a_minus(int k) const { return (index >> k) & 1U; }
  bool b_minus(int k) const { return (index >> (n + k)) & 1U; }
  bool agree(int ka, int kb) const { return a_minus(ka) == b_minus(kb); }
};

// [a_K b_K = +1] - [a_0 b_0 = +1] - sum_k ([a_k b_{k-1} = -1] + [a_{k-1} b_k = -1])
inline int chsh_indicator(std::uint64_t index, int k_max) {
  const Bits bits{index, k_max + 1};
  int s = int{bits.agree(k_max, k_max)} - int{bits.agree(0, 0)};
  for (int k = 1; k <= k_max; ++k) {
    s -= int{!bits.agree(k, k - 1)} + int{!bits.agree(k - 1, k)};
  }
  return s;
}

// [a_K=+ & b_K=+] - [a_0=+ & b_0=+] - sum_k ([a_k=+ & b_{k-1}=-] + [a_{k-1}=- & b_k=+])
inline int boschi_indicator(std::uint64_t index, int k_max) {
  const Bits bits{index, k_max + 1};
  int s = int{!bits.a_minus(k_max) && !bits.b_minus(k_max)} - int{!bits.a_minus(0) && !bits.b_minus(0)};
  for (int k = 1; k <= k_max; ++k) {
    s -= int{!bits.a_minus(k) && bits.b_minus(k - 1)};
    s -= int{bits.a_minus(k - 1) && !bits.b_minus(k)};
  }
  return s;
}

struct ChunkBest {
  int value;
  std::uint64_t index;
};

// Max-reduction over [0, count) split across threads. Ties go to the smaller
// index, so the result does not depend on how the range is partitioned.
template <class Eval>
ChunkBest parallel_argmax(std::uint64_t count, Eval eval) {
  const auto scan = [&eval](std::uint64_t begin, std::uint64_t end) {
    ChunkBest best{eval(begin), begin};
    for (std::uint64_t i = begin + 1; i < end; ++i) {
      const int v = eval(i);
      if (v > best.value) best = {v, i};
    }
    return best;
  };
  const std::uint64_t hw = std::max(1U, std::thread::hardware_concurrency());
  const std::uint64_t workers = count < (std::uint64_t{1} << 16) ? 1 : std::min<std::uint64_t>(hw, 64);
  if (workers == 1) return scan(0, count);
  std::vector<std::future<ChunkBest>> parts;
  const std::uint64_t chunk = (count + workers - 1) / workers;
  for (std::uint64_t begin = 0; begin < count; begin += chunk) {
    parts.push_back(std::async(std::launch::async, scan, begin, std::min(count, begin + chunk)));
  }
  ChunkBest best = parts.front().get();
  for (std::size_t p = 1; p < parts.size(); ++p) {
    const ChunkBest c = parts[p].get();
    if (c.value > best.value || (c.value == best.value && c.index < best.index)) best = c;
  }
  return best;
}

template <class Eval>
LhvBound enumerate_with(int k_max, Eval eval, const char* name) {
  check_enumerable(k_max);
  const std::uint64_t count = assignment_count(k_max);
  const ChunkBest best = parallel_argmax(count, [&](std::uint64_t i) { return eval(i, k_max); });
  if (best.value > 0) {
    throw ConsistencyError(std::string(name) + " bound exceeded by a local assignment");
  }
  return {static_cast<double>(best.value), LhvAssignment::from_index(k_max, best.index), count};
}

}  // namespace detail

inline double lhv_s_value(const LhvAssignment& assignment) {
  if (!assignment.valid()) throw DomainError("assignment needs K+1 values of +/-1 per side");
  return detail::chsh_indicator(assignment.index(), assignment.k_max());
}

inline double lhv_boschi_value(const LhvAssignment& assignment) {
  if (!assignment.valid()) throw DomainError("assignment needs K+1 values of +/-1 per side");
  return detail::boschi_indicator(assignment.index(), assignment.k_max());
}

// Classical maximum of S_K (correlation form). Must be 0.
inline LhvBound enumerate_bound(int k_max) {
  return detail::enumerate_with(k_max, detail::chsh_indicator, "correlation-form");
}

// Classical maximum of the outcome-specific form. Must be 0.
inline LhvBound enumerate_boschi_bound(int k_max) {
  return detail::enumerate_with(k_max, detail::boschi_indicator, "outcome-form");
}

// The 2K+2 perfect (anti)correlations a local model would need in the
// K -> infinity, x -> 1 limit: A_0 B_0 = -1, A_k B_{k-1} = A_{k-1} B_k = +1,
// A_K B_K = +1.
inline std::vector<ProductConstraint> limit_constraints(int k_max) {
  if (k_max < 1) throw RangeError("K must be at least 1");
  std::vector<ProductConstraint> out;
  out.push_back({0, 0, -1});
  for (int k = 1; k <= k_max; ++k) {
    out.push_back({k, k - 1, +1});
    out.push_back({k - 1, k, +1});
  }
  out.push_back({k_max, k_max, +1});
  return out;
}

inline std::uint64_t count_satisfying(int k_max, const std::vector<ProductConstraint>& constraints) {
  detail::check_enumerable(k_max);
  for (const auto& c : constraints) {
    if (c.a_index < 0 || c.a_index > k_max || c.b_index < 0 || c.b_index > k_max ||
        (c.required != 1 && c.required != -1)) {
      throw DomainError("malformed product constraint");
    }
  }
  const std::uint64_t count = detail::assignment_count(k_max);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    const detail::Bits bits{i, k_max + 1};
    const bool ok = std::all_of(constraints.begin(), constraints.end(), [&](const ProductConstraint& c) {
      return bits.agree(c.a_index, c.b_index) == (c.required == 1);
    });
    if (ok) ++hits;
  }
  return hits;
}

// Product of all left-hand sides when every variable appears an even number
// of times (then it is +1 regardless of the assignment); nullopt otherwise.
inline std::optional<int> forced_lhs_product(int k_max, const std::vector<ProductConstraint>& constraints) {
  std::vector<int> uses(2 * static_cast<std::size_t>(k_max + 1), 0);
  for (const auto& c : constraints) {
    ++uses[static_cast<std::size_t>(c.a_index)];
    ++uses[static_cast<std::size_t>(k_max + 1 + c.b_index)];
  }
  const bool even = std::all_of(uses.begin(), uses.end(), [](int u) { return u % 2 == 0; });
  if (!even) return std::nullopt;
  return 1;
}

inline int required_product(const std::vector<ProductConstraint>& constraints) {
  int p = 1;
  for (const auto& c : constraints) p *= c.required;
  return p;
}

// Parity argument for any K; exhaustive check as well when K is small enough.
inline ContradictionRecord direct_contradiction(int k_max) {
  const auto constraints = limit_constraints(k_max);
  const auto lhs = forced_lhs_product(k_max, constraints);
  if (!lhs) throw ConsistencyError("ladder constraints should use each variable twice");
  ContradictionRecord out;
  out.k_max = k_max;
  out.lhs_product = *lhs;
  out.rhs_product = required_product(constraints);
  if (k_max <= kMaxEnumeratedRungs) {
    out.satisfying = count_satisfying(k_max, constraints);
    out.assignments_checked = detail::assignment_count(k_max);
    if (*out.satisfying != 0 && out.lhs_product != out.rhs_product) {
      throw ConsistencyError("enumeration disagrees with the parity argument");
    }
  }
  return out;
}

}  // namespace ladder
