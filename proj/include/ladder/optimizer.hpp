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

// Optimal entanglement ratios for the ladder.
//
// For fixed K the optimized P_K peaks at two reciprocal ratios r1 < 1 < r2 = 1/r1,
// the nontrivial positive zeros of
//
//   m_K(x) = x^(4K+3) - (1+2K) x^(2K+3) - 2K x^(2K+2) - 2K x^(2K+1) - (1+2K) x^(2K) + 1.
//
// m_K is palindromic, has a triple zero at -1, and m_K(0) = 1 > 0 > -8K = m_K(1),
// so r1 is bracketed by (0, 1).

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ladder/errors.hpp"
#include "ladder/ladder.hpp"

namespace ladder {

struct RootPair {
  int k = 0;
  double r1 = 0.0;
  double r2 = 0.0;
  double p_max = 0.0;
  double residual = 0.0;  // |m_K(r1)|
  int iterations = 0;
};

struct CurveSample {
  double x = 0.0;
  double m_value = 0.0;
};

struct PeakLocation {
  double x_opt = 0.0;
  double p_max = 0.0;
};

inline constexpr double kRootResidual = 1e-12;
inline constexpr int kRootMaxIterations = 200;

namespace detail {

// x^(2K) .. x^(2K+3) and x^(4K+3), each computed once.
struct MPowers {
  double p2k, p2k1, p2k2, p2k3, p4k3;

  MPowers(double x, int k) {
    p2k = std::pow(x, 2 * k);
    p2k1 = p2k * x;
    p2k2 = p2k1 * x;
    p2k3 = p2k2 * x;
    p4k3 = p2k3 * p2k;
  }
};

inline double checked(double v, double x, int k) {
  if (!std::isfinite(v)) {
    throw RangeError("m_K(x) overflows for x = " + std::to_string(x) + ", K = " +
                     std::to_string(k));
  }
  return v;
}

}  // namespace detail

inline double m_poly(double x, int k) {
  if (!std::isfinite(x)) throw DomainError("m_K requires finite x");
  check_rungs(k);
  const detail::MPowers p(x, k);
  const double twok = 2.0 * k;
  double sum = 1.0;
  sum -= (1.0 + twok) * p.p2k;
  sum -= twok * p.p2k1;
  sum -= twok * p.p2k2;
  sum -= (1.0 + twok) * p.p2k3;
  sum += p.p4k3;
  return detail::checked(sum, x, k);
}

inline double m_poly_derivative(double x, int k) {
  if (!std::isfinite(x)) throw DomainError("m_K requires finite x");
  check_rungs(k);
  const double twok = 2.0 * k;
  // d/dx of each term, with x^(2K-1) built from x^(2K) only when x != 0.
  const double p2km1 = std::pow(x, 2 * k - 1);
  const double p2k = p2km1 * x;
  const double p2k1 = p2k * x;
  const double p2k2 = p2k1 * x;
  const double p4k2 = p2k2 * p2k;
  double sum = -(1.0 + twok) * twok * p2km1;
  sum -= twok * (twok + 1.0) * p2k;
  sum -= twok * (twok + 2.0) * p2k1;
  sum -= (1.0 + twok) * (twok + 3.0) * p2k2;
  sum += (2.0 * twok + 3.0) * p4k2;
  return detail::checked(sum, x, k);
}

// Safeguarded Newton iteration inside a sign-change bracket [lo, hi]. Bisects
// until the bracket is narrower than `polish_width`, then takes Newton steps,
// falling back to bisection whenever a step leaves the bracket. Once |f| <= tol
// the root is polished further to rounding level.
template <class F, class DF>
std::pair<double, int> bracketed_newton(F&& f, DF&& df, double lo, double hi, double tol,
                                        int max_iter, double polish_width = 1e-3) {
  double f_lo = f(lo);
  double mid = 0.5 * (lo + hi);
  double f_mid = f(mid);
  int iter = 0;
  while (iter < max_iter && std::abs(f_mid) > tol) {
    ++iter;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
    double next = 0.5 * (lo + hi);
    if (hi - lo < polish_width) {
      const double slope = df(mid);
      const double step = slope != 0.0 ? mid - f_mid / slope : next;
      if (step > lo && step < hi) next = step;
    }
    if (next == mid) break;
    mid = next;
    f_mid = f(mid);
  }
  if (std::abs(f_mid) > tol) {
    throw ConvergenceError("root polish did not reach tolerance after " +
                               std::to_string(iter) + " iterations",
                           std::abs(f_mid));
  }
  // A few more Newton steps down to rounding level; kept only while |f| shrinks.
  for (int extra = 0; extra < 4 && iter < max_iter && f_mid != 0.0; ++extra) {
    const double slope = df(mid);
    if (slope == 0.0) break;
    const double step = mid - f_mid / slope;
    if (!(step > lo && step < hi)) break;
    const double f_step = f(step);
    ++iter;
    if (!(std::abs(f_step) < std::abs(f_mid))) break;
    mid = step;
    f_mid = f_step;
  }
  return {mid, iter};
}

inline RootPair find_roots(int k) {
  check_rungs(k);
  const auto f = [k](double x) { return m_poly(x, k); };
  const auto df = [k](double x) { return m_poly_derivative(x, k); };
  const auto [r1, iterations] =
      bracketed_newton(f, df, 0.0, 1.0, kRootResidual, kRootMaxIterations);
  RootPair out;
  out.k = k;
  out.r1 = r1;
  out.r2 = 1.0 / r1;
  out.p_max = pk_hardy(r1, k);
  out.residual = std::abs(m_poly(r1, k));
  out.iterations = iterations;
  return out;
}

// Golden-section search for the maximum of a unimodal f on [lo, hi]. Stops when
// the bracket is narrower than tol.
template <class F>
std::pair<double, double> golden_section_maximize(F&& f, double lo, double hi, double tol = 1e-12,
                                                  int max_iter = 500) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  const double x = 0.5 * (lo + hi);
  return {x, f(x)};
}

inline constexpr double kPeakSearchLo = 0.01;
inline constexpr double kPeakSearchHi = 1.0;

// Maximizes the optimized P_K over the ratio directly, independent of m_K.
inline PeakLocation maximize_pk(int k) {
  check_rungs(k);
  const auto [x, p] = golden_section_maximize([k](double r) { return pk_hardy(r, k); },
                                              kPeakSearchLo, kPeakSearchHi);
  return {x, p};
}

inline std::vector<CurveSample> scan_m(int k, double x_lo, double x_hi, int steps) {
  check_rungs(k);
  if (!std::isfinite(x_lo) || !std::isfinite(x_hi) || !(x_lo < x_hi)) {
    throw DomainError("scan requires finite lo < hi");
  }
  if (steps < 2) throw DomainError("scan requires at least 2 steps");
  std::vector<CurveSample> out;
  out.reserve(static_cast<std::size_t>(steps));
  const double width = x_hi - x_lo;
  for (int i = 0; i < steps; ++i) {
    const double x = (i == steps - 1) ? x_hi : x_lo + width * i / (steps - 1);
    out.push_back({x, m_poly(x, k)});
  }
  return out;
}

// Indices i with samples[i] and samples[i+1] of strictly opposite sign.
inline std::vector<std::size_t> sign_changes(const std::vector<CurveSample>& samples) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const double a = samples[i].m_value;
    const double b = samples[i + 1].m_value;
    if ((a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0)) out.push_back(i);
  }
  return out;
}

inline std::vector<RootPair> table1(int k_max) {
  check_rungs(k_max);
  std::vector<RootPair> rows;
  rows.reserve(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) rows.push_back(find_roots(k));
  return rows;
}

}  // namespace ladder
