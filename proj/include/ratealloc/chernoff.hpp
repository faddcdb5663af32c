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


#ifndef RATEALLOC_CHERNOFF_HPP_
#define RATEALLOC_CHERNOFF_HPP_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "ratealloc/observation_model.hpp"
#include "ratealloc/quantizer.hpp"

namespace ratealloc {

// All information measures are in nats.

struct ChernoffResult {
  double value = 0.0;
  double alpha_star = 0.5;
};

/// C(alpha) = -log sum_u p0[u]^alpha p1[u]^(1-alpha), evaluated in the log
/// domain. Cells empty under both hypotheses are skipped; a cell empty under
/// exactly one hypothesis contributes nothing for alpha in (0, 1) and takes
/// the 0^0 = 1 convention at the matching endpoint. Throws std::domain_error
/// for alpha outside [0, 1].
double chernoff_at_alpha(const SensorPmfPair& pmfs, double alpha);

/// max over alpha in [0, 1] of chernoff_at_alpha. Identical pmfs give
/// {0, 0.5}.
ChernoffResult chernoff_information(const SensorPmfPair& pmfs);

/// Chernoff information of independent sensors sharing a single alpha.
/// Throws std::domain_error on an empty list.
ChernoffResult network_chernoff(std::span<const SensorPmfPair> sensors);

/// Chernoff information of one raw (unquantized) observation, m^2 / 2.
double chernoff_raw(const ObservationModel& model);

struct ConcavityReport {
  bool concave = true;
  /// Interior indices k with g(k-1) + g(k+1) > 2 g(k) + slack.
  std::vector<std::size_t> violations;
};

/// Discrete concavity test on values indexed by consecutive rates. Throws
/// std::domain_error for fewer than three values or negative slack.
ConcavityReport is_discrete_concave(std::span<const double> values, double slack = 1e-9);

/// Chernoff information as a function of rate for one design method.
struct ChernoffCurve {
  std::vector<int> rates;
  std::vector<double> values;

  /// Throws std::domain_error on mismatched lengths, non-increasing rates or
  /// negative values.
  void Validate() const;

  /// Soft sanity check; a sane design never loses information with rate.
  bool IsNondecreasing(double slack = 1e-9) const;

  /// CSV with header `rate,chernoff`.
  void WriteCsv(std::ostream& out) const;
  static ChernoffCurve ReadCsv(std::istream& in);
};

}  // namespace ratealloc

#endif  // RATEALLOC_CHERNOFF_HPP_
