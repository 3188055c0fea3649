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

// Two spin-half particles in the real entangled state
//
//   |psi> = alpha |+>_A |+>_B - beta |->_A |->_B,   alpha, beta > 0,
//
// measured along rotated real bases. Probabilities are computed by the Born
// rule on an explicit 4-component state vector, so everything here serves as
// the reference against which closed-form expressions are checked.
//
// Basis ordering of the state vector is (++, +-, -+, --).

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "ladder/errors.hpp"

namespace ladder {

inline constexpr double kNormTolerance = 1e-14;
inline constexpr double kDefaultZeroTolerance = 1e-12;

enum class Outcome : int { plus = +1, minus = -1 };

constexpr int value(Outcome o) noexcept { return static_cast<int>(o); }

inline constexpr std::array<Outcome, 2> kOutcomes = {Outcome::plus, Outcome::minus};

class LadderState {
 public:
  // alpha = x / sqrt(1 + x^2), beta = 1 / sqrt(1 + x^2).
  static LadderState from_ratio(double x) {
    if (!std::isfinite(x) || !(x > 0.0)) {
      throw DomainError("amplitude ratio must be positive and finite, got " +
                        std::to_string(x) + " (product states carry no contradiction)");
    }
    // hypot avoids overflow of x*x for large ratios.
    const double norm = std::hypot(1.0, x);
    return LadderState(x / norm, 1.0 / norm, x);
  }

  static LadderState from_amplitudes(double alpha, double beta) {
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !(alpha > 0.0) || !(beta > 0.0)) {
      throw DomainError("amplitudes must be positive and finite");
    }
    if (std::abs(alpha * alpha + beta * beta - 1.0) > kNormTolerance) {
      throw DomainError("amplitudes must satisfy alpha^2 + beta^2 = 1");
    }
    return LadderState(alpha, beta, alpha / beta);
  }

  static LadderState maximally_entangled() { return from_ratio(1.0); }

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double ratio() const noexcept { return ratio_; }

  // Same physics with the roles of alpha and beta exchanged (x -> 1/x).
  LadderState swapped() const noexcept { return LadderState(beta_, alpha_, 1.0 / ratio_); }

  std::array<double, 4> vector() const noexcept { return {alpha_, 0.0, 0.0, -beta_}; }

 private:
  LadderState(double alpha, double beta, double ratio) noexcept
      : alpha_(alpha), beta_(beta), ratio_(ratio) {}

  double alpha_;
  double beta_;
  double ratio_;
};

// Measurement angle of a two-outcome observable. Angles differing by pi give
// the same observable, so they are reduced to [-pi/2, pi/2).
class Setting {
 public:
  constexpr Setting() = default;

  static Setting radians(double angle) {
    if (!std::isfinite(angle)) {
      throw DomainError("measurement angle must be finite");
    }
    double reduced = std::remainder(angle, std::numbers::pi);
    if (reduced >= std::numbers::pi / 2) {
      reduced -= std::numbers::pi;
    }
    return Setting(reduced);
  }

  static Setting from_tangent(double t) { return radians(std::atan(t)); }

  constexpr double angle() const noexcept { return angle_; }
  double tangent() const noexcept { return std::tan(angle_); }

  // Eigenvector components in the (|+>, |->) basis.
  std::array<double, 2> eigenvector(Outcome o) const noexcept {
    const double c = std::cos(angle_);
    const double s = std::sin(angle_);
    if (o == Outcome::plus) return {c, s};
    return {-s, c};
  }

  friend constexpr bool operator==(Setting, Setting) = default;

 private:
  constexpr explicit Setting(double angle) noexcept : angle_(angle) {}

  double angle_ = 0.0;
};

struct JointTable {
  double p_pp = 0.0;
  double p_pm = 0.0;
  double p_mp = 0.0;
  double p_mm = 0.0;

  double at(Outcome oa, Outcome ob) const noexcept {
    if (oa == Outcome::plus) return ob == Outcome::plus ? p_pp : p_pm;
    return ob == Outcome::plus ? p_mp : p_mm;
  }
  double total() const noexcept { return p_pp + p_pm + p_mp + p_mm; }
  // Outcomes agree / disagree.
  double same() const noexcept { return p_pp + p_mm; }
  double differ() const noexcept { return p_pm + p_mp; }
  double marginal_a_plus() const noexcept { return p_pp + p_pm; }
  double marginal_b_plus() const noexcept { return p_pp + p_mp; }
};

inline double amplitude(const LadderState& state, Setting a, Setting b, Outcome oa,
                        Outcome ob) noexcept {
  const auto ea = a.eigenvector(oa);
  const auto eb = b.eigenvector(ob);
  const auto psi = state.vector();
  double sum = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      sum += ea[i] * eb[j] * psi[2 * i + j];
    }
  }
  return sum;
}

inline double joint_probability(const LadderState& state, Setting a, Setting b, Outcome oa,
                                Outcome ob) noexcept {
  const double amp = amplitude(state, a, b, oa, ob);
  return amp * amp;
}

inline JointTable joint_table(const LadderState& state, Setting a, Setting b) noexcept {
  return JointTable{
      joint_probability(state, a, b, Outcome::plus, Outcome::plus),
      joint_probability(state, a, b, Outcome::plus, Outcome::minus),
      joint_probability(state, a, b, Outcome::minus, Outcome::plus),
      joint_probability(state, a, b, Outcome::minus, Outcome::minus),
  };
}

}  // namespace ladder
