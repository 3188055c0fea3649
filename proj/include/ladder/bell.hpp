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

// CHSH-type quantities for the ladder under equal (canonical) settings.
//
//   P+(A_k, B_k') = P(+,+) + P(-,-),   P-(A_k, B_k') = P(+,-) + P(-,+)
//
//   S_K = P+(A_K,B_K) - P+(A_0,B_0) - 2 sum_{k=1..K} P-(A_k,B_{k-1}) <= 0
//
// holds for every local model; quantum mechanics reaches S_K = 2 P_K.

#include <algorithm>
#include <cmath>
#include <string>

#include "ladder/errors.hpp"
#include "ladder/ladder.hpp"
#include "ladder/quantum_core.hpp"

namespace ladder {

struct BellReport {
  int k_max = 0;
  double p_plus_00 = 0.0;
  double p_plus_KK = 0.0;
  double cross_sum = 0.0;  // sum_{k=1..K} P-(A_k, B_{k-1})
  double s_value = 0.0;
  double boschi_lhs = 0.0;  // P(A_K=+1, B_K=+1)
  double boschi_rhs = 0.0;  // vanishing terms bounding it classically
};

struct LimitProfile {
  double p_plus_00 = 0.0;
  double p_plus_KK = 0.0;
  double max_cross = 0.0;  // max_k P-(A_k, B_{k-1})
};

inline constexpr double kCanonicalTolerance = 1e-12;

namespace detail {

inline void check_index(int k) {
  if (k < 0 || k > kMaxRungs) {
    throw DomainError("setting index " + std::to_string(k) + " outside [0, " +
                      std::to_string(kMaxRungs) + "]");
  }
}

// Numerator term shared by both closed forms:
// 4 (x / (1 + x^2)) (-1)^(k+k') x^(k+k'+1).
inline double cross_term(double x, int k, int kp) {
  const double sign = ((k + kp) % 2 == 0) ? 1.0 : -1.0;
  return 4.0 * (x / (1.0 + x * x)) * sign * std::pow(x, k + kp + 1);
}

inline double denominator(double x, int k, int kp) {
  return (1.0 + std::pow(x, 2 * k + 1)) * (1.0 + std::pow(x, 2 * kp + 1));
}

inline double finite_or_throw(double v) {
  if (!std::isfinite(v)) throw RangeError("correlation closed form overflows");
  return v;
}

inline void require_canonical(const LadderState& state, const SettingsChain& chain) {
  if (!chain.well_formed()) throw DomainError("settings chain has inconsistent dimensions");
  const auto reference = canonical_chain(state, chain.k_max);
  for (std::size_t i = 0; i < reference.alpha_angles.size(); ++i) {
    if (std::abs(reference.alpha_angles[i].angle() - chain.alpha_angles[i].angle()) >
            kCanonicalTolerance ||
        std::abs(reference.beta_angles[i].angle() - chain.beta_angles[i].angle()) >
            kCanonicalTolerance) {
      throw DomainError("closed-form correlations hold only for the canonical settings");
    }
  }
}

}  // namespace detail

// P+(A_k, B_k') at canonical settings:
// [1 + x^(2(k+k'+1)) - cross] / [(1 + x^(2k+1)) (1 + x^(2k'+1))].
inline double p_plus(const LadderState& state, int k, int kp) {
  detail::check_index(k);
  detail::check_index(kp);
  const double x = state.ratio();
  const double num = 1.0 + std::pow(x, 2 * (k + kp + 1)) - detail::cross_term(x, k, kp);
  return detail::finite_or_throw(num / detail::denominator(x, k, kp));
}

// P-(A_k, B_k') at canonical settings:
// [x^(2k+1) + x^(2k'+1) + cross] / [(1 + x^(2k+1)) (1 + x^(2k'+1))].
inline double p_minus(const LadderState& state, int k, int kp) {
  detail::check_index(k);
  detail::check_index(kp);
  const double x = state.ratio();
  const double num = std::pow(x, 2 * k + 1) + std::pow(x, 2 * kp + 1) + detail::cross_term(x, k, kp);
  return detail::finite_or_throw(num / detail::denominator(x, k, kp));
}

// Chain-checked variants: reject anything but the canonical settings of `state`.
inline double p_plus(const LadderState& state, const SettingsChain& chain, int k, int kp) {
  detail::require_canonical(state, chain);
  if (k > chain.k_max || kp > chain.k_max) throw DomainError("setting index beyond chain length");
  return p_plus(state, k, kp);
}

inline double p_minus(const LadderState& state, const SettingsChain& chain, int k, int kp) {
  detail::require_canonical(state, chain);
  if (k > chain.k_max || kp > chain.k_max) throw DomainError("setting index beyond chain length");
  return p_minus(state, k, kp);
}

// Born-rule joint table for A_k against B_k' on a chain.
inline JointTable chain_table(const LadderState& state, const SettingsChain& chain, int k, int kp) {
  if (!chain.well_formed()) throw DomainError("settings chain has inconsistent dimensions");
  if (k < 0 || kp < 0 || k > chain.k_max || kp > chain.k_max) {
    throw DomainError("setting index outside the chain");
  }
  return joint_table(state, chain.alpha_angles[static_cast<std::size_t>(k)],
                     chain.beta_angles[static_cast<std::size_t>(kp)]);
}

inline BellReport s_k(const LadderState& state, int k_max) {
  check_rungs(k_max);
  BellReport r;
  r.k_max = k_max;
  r.p_plus_00 = p_plus(state, 0, 0);
  r.p_plus_KK = p_plus(state, k_max, k_max);
  for (int k = 1; k <= k_max; ++k) r.cross_sum += p_minus(state, k, k - 1);
  r.s_value = r.p_plus_KK - r.p_plus_00 - 2.0 * r.cross_sum;

  // Outcome-specific form, evaluated with the state vector.
  const auto chain = canonical_chain(state, k_max);
  const auto& a = chain.alpha_angles;
  const auto& b = chain.beta_angles;
  const auto top = static_cast<std::size_t>(k_max);
  r.boschi_lhs = joint_probability(state, a[top], b[top], Outcome::plus, Outcome::plus);
  r.boschi_rhs = joint_probability(state, a[0], b[0], Outcome::plus, Outcome::plus);
  for (std::size_t k = 1; k <= top; ++k) {
    r.boschi_rhs += joint_probability(state, a[k], b[k - 1], Outcome::plus, Outcome::minus);
    r.boschi_rhs += joint_probability(state, a[k - 1], b[k], Outcome::minus, Outcome::plus);
  }
  return r;
}

// Footnote form of the K = 1 inequality: P-(0,0) + P+(0,1) + P+(1,0) + P+(1,1) <= 3.
inline double chsh_k1_sum(const LadderState& state) {
  return p_minus(state, 0, 0) + p_plus(state, 0, 1) + p_plus(state, 1, 0) + p_plus(state, 1, 1);
}

// Finite-K values of the quantities whose K -> infinity, x -> 1 limits are
// 0, 1 and 0 respectively. No extrapolation.
inline LimitProfile limit_profile(int k_max, double x) {
  check_rungs(k_max);
  const auto state = LadderState::from_ratio(x);
  LimitProfile out;
  out.p_plus_00 = p_plus(state, 0, 0);
  out.p_plus_KK = p_plus(state, k_max, k_max);
  for (int k = 1; k <= k_max; ++k) out.max_cross = std::max(out.max_cross, p_minus(state, k, k - 1));
  return out;
}

}  // namespace ladder
