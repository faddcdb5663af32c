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


#ifndef RATEALLOC_DETECTION_HPP_
#define RATEALLOC_DETECTION_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ratealloc/observation_model.hpp"
#include "ratealloc/quantizer.hpp"

namespace ratealloc {

struct Priors {
  double pi0 = 0.5;
  double pi1 = 0.5;
};

/// Sensors reporting to a MAP fusion center over an error-free channel.
struct NetworkConfig {
  std::vector<Quantizer> quantizers;
  ObservationModel model{1.0};
  Priors priors;

  /// Throws std::domain_error for an empty network or invalid priors.
  void Validate() const;
};

/// Largest product message space exact enumeration will visit.
inline constexpr std::uint64_t kMaxExactMessages = std::uint64_t{1} << 24;

/// Bayes error of the MAP fusion rule over T independent snapshots:
///   P_E = 1 - sum_u max_j pi_j P(u | H_j),
/// summed over the whole product message space (T copies of every sensor).
/// Throws CapacityError if that space exceeds kMaxExactMessages.
double exact_map_error(const NetworkConfig& config, int snapshots = 1);

struct McConfig {
  int snapshots = 1;
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
  // Ties in the likelihood ratio always decide H0.
};

struct McEstimate {
  double estimate = 0.0;
  double std_err = 0.0;
  std::int64_t errors = 0;
  std::int64_t trials = 0;
};

/// Simulates the MAP fusion center: per trial draws H from the priors, draws
/// N * T observations, quantizes them and decides H1 iff the summed
/// log-likelihood ratio exceeds log(pi0 / pi1). Trial i uses its own random
/// stream, so the result does not depend on the number of workers.
McEstimate monte_carlo_error(const NetworkConfig& config, const McConfig& mc);

struct ExponentPoint {
  int snapshots = 0;
  double exponent = 0.0;       // -(1/T) log P_E estimate
  McEstimate estimate;
  bool lower_bound = false;    // no errors observed; exponent uses P_E < 1/trials
};

/// Empirical error exponents for each T in `t_values`.
std::vector<ExponentPoint> exponent_estimate(const NetworkConfig& config,
                                             const std::vector<int>& t_values,
                                             std::int64_t trials_per_t, std::uint64_t seed);

struct ExactErrorRow {
  double snr_db = 0.0;
  std::string allocation;
  double pe = 0.0;
};

struct McErrorRow {
  double snr_db = 0.0;
  std::string allocation;
  int snapshots = 1;
  McEstimate estimate;
};

/// `snr_db,allocation,pe,log10_pe`
void WriteExactCsv(std::ostream& out, const std::vector<ExactErrorRow>& rows);
/// `snr_db,allocation,T,estimate,std_err`
void WriteMcCsv(std::ostream& out, const std::vector<McErrorRow>& rows);

}  // namespace ratealloc

#endif  // RATEALLOC_DETECTION_HPP_
