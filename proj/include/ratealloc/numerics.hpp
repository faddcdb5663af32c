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


#ifndef RATEALLOC_NUMERICS_HPP_
#define RATEALLOC_NUMERICS_HPP_

#include <functional>

namespace ratealloc {

struct Tolerance {
  double abs_tol = 1e-12;     // special functions
  double search_tol = 1e-9;   // 1-D maximization

  void Validate() const;
};

/// Standard normal cumulative distribution function G(y).
/// Throws std::domain_error for NaN or infinite input.
double std_normal_cdf(double y);

/// Upper tail Q(y) = 1 - G(y), evaluated without cancellation for large y.
double std_normal_q(double y);

/// Inverse of std_normal_cdf on the open interval (0, 1).
double std_normal_inv_cdf(double p);

/// P(lo <= Z < hi) for a standard normal Z. Either end may be infinite.
/// Uses whichever tail keeps the subtraction well conditioned.
double normal_interval_probability(double lo, double hi);

struct Maximum {
  double argmax = 0.0;
  double value = 0.0;
};

/// Golden-section maximization of a concave function on [lo, hi]. Endpoints
/// are compared against the interior optimum so boundary maxima are exact.
Maximum maximize_concave_1d(const std::function<double(double)>& f, double lo,
                            double hi, double tol = Tolerance{}.search_tol);

}  // namespace ratealloc

#endif  // RATEALLOC_NUMERICS_HPP_
