// Copyright 2026 The ratealloc Authors.
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


#include "ratealloc/numerics.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ratealloc {

void Tolerance::Validate() const {
  if (!(abs_tol > 0.0) || !(search_tol > 0.0)) {
    throw std::domain_error("tolerances must be positive");
  }
}

double std_normal_cdf(double y) {
  if (!std::isfinite(y)) {
    throw std::domain_error("std_normal_cdf: non-finite argument");
  }
  return 0.5 * std::erfc(-y / std::numbers::sqrt2);
}

double std_normal_q(double y) {
  if (!std::isfinite(y)) {
    throw std::domain_error("std_normal_q: non-finite argument");
  }
  return 0.5 * std::erfc(y / std::numbers::sqrt2);
}

namespace {

// Acklam's rational approximation, |relative error| < 1.15e-9, valid for
// 0 < p <= 0.5. Refined by Halley steps below.
double AcklamLower(double p) {
  static constexpr std::array<double, 6> a = {
      -3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
      1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b = {
      -5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
      6.680131188771972e+01, -1.328068155288572e+01};
  static constexpr std::array<double, 6> c = {
      -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
      -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d = {
      7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
      3.754408661907416e+00};
  constexpr double kLow = 0.02425;

  if (p < kLow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// p in (0, 0.5]; result <= 0 where G has full relative precision.
double InvCdfLower(double p) {
  double x = AcklamLower(p);
  const double sqrt_2pi = std::sqrt(2.0 * std::numbers::pi);
  for (int step = 0; step < 2; ++step) {
    const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
    const double u = e * sqrt_2pi * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

}  // namespace

double std_normal_inv_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("std_normal_inv_cdf: p must lie in (0, 1)");
  }
  if (p == 0.5) return 0.0;
  if (p < 0.5) return InvCdfLower(p);
  // 1 - p is exact for p in [0.5, 1).
  return -InvCdfLower(1.0 - p);
}

double normal_interval_probability(double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi)) {
    throw std::domain_error("normal_interval_probability: NaN bound");
  }
  if (!(lo < hi)) return 0.0;
  const auto lower_cdf = [](double y) {
    if (y == -INFINITY) return 0.0;
    if (y == INFINITY) return 1.0;
    return std_normal_cdf(y);
  };
  const auto upper_tail = [](double y) {
    if (y == -INFINITY) return 1.0;
    if (y == INFINITY) return 0.0;
    return std_normal_q(y);
  };
  if (lo >= 0.0) return upper_tail(lo) - upper_tail(hi);
  if (hi <= 0.0) return lower_cdf(hi) - lower_cdf(lo);
  // Straddles zero: both tails are at most one half.
  return 1.0 - lower_cdf(lo) - upper_tail(hi);
}

Maximum maximize_concave_1d(const std::function<double(double)>& f, double lo,
                            double hi, double tol) {
  if (!(lo < hi)) {
    throw std::domain_error("maximize_concave_1d: require lo < hi");
  }
  if (!(tol > 0.0)) {
    throw std::domain_error("maximize_concave_1d: tolerance must be positive");
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  Maximum best{0.5 * (a + b), 0.0};
  best.value = f(best.argmax);
  for (double x : {lo, hi}) {
    const double fx = f(x);
    if (fx > best.value) best = {x, fx};
  }
  return best;
}

}  // namespace ratealloc
