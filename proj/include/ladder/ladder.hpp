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

// The ladder of measurement settings. For a state with ratio x = alpha/beta the
// 2K+1 vanishing joint probabilities
//
//   P(A_k=+1, B_{k-1}=-1) = 0,  P(A_{k-1}=-1, B_k=+1) = 0   (k = 1..K),
//   P(A_0=+1, B_0=+1) = 0
//
// are equivalent to the tangent relations
//
//   tan a_k / tan b_{k-1} = -x,  tan b_k / tan a_{k-1} = -x,  tan a_0 tan b_0 = x,
//
// whose product gives tan a_K tan b_K = x^(2K+1). Fixing a_K fixes the rest.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

#include "ladder/errors.hpp"
#include "ladder/quantum_core.hpp"

namespace ladder {

// Largest rung index accepted by the closed forms.
inline constexpr int kMaxRungs = 64;
inline constexpr double kChainTolerance = 1e-10;

inline void check_rungs(int k) {
  if (k < 1 || k > kMaxRungs) {
    throw RangeError("K must lie in [1, " + std::to_string(kMaxRungs) + "], got " +
                     std::to_string(k));
  }
}

struct SettingsChain {
  int k_max = 0;
  std::vector<Setting> alpha_angles;  // a_0 .. a_K
  std::vector<Setting> beta_angles;   // b_0 .. b_K

  bool well_formed() const noexcept {
    return k_max >= 1 && alpha_angles.size() == static_cast<std::size_t>(k_max) + 1 &&
           beta_angles.size() == static_cast<std::size_t>(k_max) + 1;
  }
};

struct LadderCertificate {
  double p_k = 0.0;
  double max_zero_violation = 0.0;
};

namespace detail {

inline bool is_half_pi_multiple(double angle) { return std::remainder(angle, std::numbers::pi / 2) == 0.0; }

inline SettingsChain chain_from_tangents(int k_max, const std::vector<double>& ta,
                                         const std::vector<double>& tb) {
  SettingsChain chain;
  chain.k_max = k_max;
  chain.alpha_angles.reserve(ta.size());
  chain.beta_angles.reserve(tb.size());
  for (std::size_t i = 0; i < ta.size(); ++i) {
    chain.alpha_angles.push_back(Setting::from_tangent(ta[i]));
    chain.beta_angles.push_back(Setting::from_tangent(tb[i]));
  }
  return chain;
}

inline double relative_gap(double value, double target) { return std::abs(value / target - 1.0); }

}  // namespace detail

// Solves the whole chain from the free variable a_K.
//
// b_K comes from tan b_K = x^(2K+1) cot a_K. Two interleaved descents follow:
// a_K -> b_{K-1} -> a_{K-2} -> ... and b_K -> a_{K-1} -> b_{K-2} -> ...,
// each step a single division by -x. Tangents are carried through the descent
// and only converted to angles at the end; tan a_0 tan b_0 = x is then checked
// on the carried tangents.
inline SettingsChain solve_chain(const LadderState& state, int k_max, Setting alpha_k) {
  check_rungs(k_max);
  if (detail::is_half_pi_multiple(alpha_k.angle())) {
    throw DomainError("free setting a_K must not be a multiple of pi/2");
  }
  const double x = state.ratio();
  const auto n = static_cast<std::size_t>(k_max);
  std::vector<double> ta(n + 1);
  std::vector<double> tb(n + 1);
  ta[n] = std::tan(alpha_k.angle());
  tb[n] = std::pow(x, 2 * k_max + 1) / ta[n];
  for (std::size_t k = n; k >= 1; --k) {
    tb[k - 1] = -ta[k] / x;
    ta[k - 1] = -tb[k] / x;
  }
  for (std::size_t k = 0; k <= n; ++k) {
    if (!std::isfinite(ta[k]) || !std::isfinite(tb[k]) || ta[k] == 0.0 || tb[k] == 0.0) {
      throw RangeError("settings chain leaves double range for x = " + std::to_string(x) +
                       ", K = " + std::to_string(k_max));
    }
  }
  const double closure = detail::relative_gap(ta[0] * tb[0], x);
  if (!(closure <= kChainTolerance)) {
    throw ConsistencyError("tan a_0 tan b_0 = x violated by relative " + std::to_string(closure));
  }
  return detail::chain_from_tangents(k_max, ta, tb);
}

// Equal settings on both sides, tan a_k = tan b_k = (-1)^k x^(k + 1/2).
inline SettingsChain canonical_chain(const LadderState& state, int k_max) {
  check_rungs(k_max);
  const double x = state.ratio();
  const auto n = static_cast<std::size_t>(k_max);
  std::vector<double> t(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double magnitude = std::pow(x, static_cast<double>(k) + 0.5);
    t[k] = (k % 2 == 0) ? magnitude : -magnitude;
  }
  return detail::chain_from_tangents(k_max, t, t);
}

// The 2K+1 probabilities that must vanish, in the order
// P(A_0=+,B_0=+), then for k = 1..K: P(A_k=+,B_{k-1}=-), P(A_{k-1}=-,B_k=+).
inline std::vector<double> zero_conditions(const LadderState& state, const SettingsChain& chain) {
  if (!chain.well_formed()) {
    throw DomainError("settings chain has inconsistent dimensions");
  }
  const auto& a = chain.alpha_angles;
  const auto& b = chain.beta_angles;
  std::vector<double> out;
  out.reserve(a.size() * 2 - 1);
  out.push_back(joint_probability(state, a[0], b[0], Outcome::plus, Outcome::plus));
  for (std::size_t k = 1; k < a.size(); ++k) {
    out.push_back(joint_probability(state, a[k], b[k - 1], Outcome::plus, Outcome::minus));
    out.push_back(joint_probability(state, a[k - 1], b[k], Outcome::minus, Outcome::plus));
  }
  return out;
}

inline LadderCertificate verify_ladder(const LadderState& state, const SettingsChain& chain) {
  const auto zeros = zero_conditions(state, chain);
  const auto top = static_cast<std::size_t>(chain.k_max);
  LadderCertificate cert;
  cert.p_k = joint_probability(state, chain.alpha_angles[top], chain.beta_angles[top],
                               Outcome::plus, Outcome::plus);
  cert.max_zero_violation = *std::max_element(zeros.begin(), zeros.end());
  return cert;
}

// Largest relative deviation of the stored angles from the tangent relations,
// including the product relation tan a_K tan b_K = x^(2K+1).
inline double chain_residual(const LadderState& state, const SettingsChain& chain) {
  if (!chain.well_formed()) {
    throw DomainError("settings chain has inconsistent dimensions");
  }
  const double x = state.ratio();
  const auto& a = chain.alpha_angles;
  const auto& b = chain.beta_angles;
  const auto top = static_cast<std::size_t>(chain.k_max);
  double worst = detail::relative_gap(a[0].tangent() * b[0].tangent(), x);
  for (std::size_t k = 1; k <= top; ++k) {
    worst = std::max(worst, detail::relative_gap(a[k].tangent() / b[k - 1].tangent(), -x));
    worst = std::max(worst, detail::relative_gap(b[k].tangent() / a[k - 1].tangent(), -x));
  }
  worst = std::max(worst, detail::relative_gap(a[top].tangent() * b[top].tangent(),
                                               std::pow(x, 2 * chain.k_max + 1)));
  return worst;
}

// P_K for an arbitrary free setting a_K once the chain constraints hold:
//
//   alpha^2 (1 - x^(2K))^2 cos^2 a_K / (1 + x^(4K+2) cot^2 a_K).
//
// Evaluated as alpha^2 beta^2 (beta^(2K) - alpha^(2K))^2 cos^2 sin^2 /
// (beta^(4K+2) sin^2 + alpha^(4K+2) cos^2), which has no cotangent and stays in
// range for any ratio.
inline double pk_general(const LadderState& state, int k_max, Setting alpha_k) {
  check_rungs(k_max);
  if (detail::is_half_pi_multiple(alpha_k.angle())) {
    return 0.0;
  }
  const double a = state.alpha();
  const double b = state.beta();
  const double c2 = std::pow(std::cos(alpha_k.angle()), 2);
  const double s2 = std::pow(std::sin(alpha_k.angle()), 2);
  const double a2k = std::pow(a, 2 * k_max);
  const double b2k = std::pow(b, 2 * k_max);
  const double gap = b2k - a2k;
  const double num = a * a * b * b * gap * gap * c2 * s2;
  const double den = b2k * b2k * b * b * s2 + a2k * a2k * a * a * c2;
  return num / den;
}

// Optimized P_K, ((alpha beta^(2K+1) - beta alpha^(2K+1)) / (beta^(2K+1) + alpha^(2K+1)))^2.
inline double pk_hardy(const LadderState& state, int k_max) {
  check_rungs(k_max);
  const double a = state.alpha();
  const double b = state.beta();
  const double an = std::pow(a, 2 * k_max + 1);
  const double bn = std::pow(b, 2 * k_max + 1);
  const double r = (a * bn - b * an) / (bn + an);
  return r * r;
}

inline double pk_hardy(double x, int k_max) { return pk_hardy(LadderState::from_ratio(x), k_max); }

// Positive root of tan^2 a_K = x^(2K+1). At this angle tan b_K = tan a_K.
inline Setting optimal_alpha_k(const LadderState& state, int k_max) {
  check_rungs(k_max);
  return Setting::from_tangent(std::pow(state.ratio(), k_max + 0.5));
}

}  // namespace ladder
