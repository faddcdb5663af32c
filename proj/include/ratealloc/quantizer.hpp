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


#ifndef RATEALLOC_QUANTIZER_HPP_
#define RATEALLOC_QUANTIZER_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "ratealloc/observation_model.hpp"

namespace ratealloc {

inline constexpr int kMaxRate = 16;

/// Number of messages 2^rate. Throws CapacityError above kMaxRate and
/// std::domain_error for negative rates.
std::size_t CellCount(int rate);

/// Monotone rate-r quantizer. Cell u (0-based) is [b_{u-1}, b_u) with
/// b_{-1} = -inf and b_{K-1} = +inf, K = 2^r. Equal neighbouring boundaries
/// give an empty cell, which is legal.
class Quantizer {
 public:
  /// Rate-0 single-cell quantizer.
  Quantizer() = default;

  /// Throws std::domain_error when the boundary list has the wrong length,
  /// is unsorted or holds NaN, and CapacityError when rate > kMaxRate.
  Quantizer(int rate, std::vector<double> boundaries);

  int rate() const { return rate_; }
  std::size_t cell_count() const { return boundaries_.size() + 1; }
  const std::vector<double>& boundaries() const { return boundaries_; }

  double LowerEdge(std::size_t cell) const;
  double UpperEdge(std::size_t cell) const;

  /// Message index of observation x.
  std::size_t Quantize(double x) const;

  bool operator==(const Quantizer&) const = default;

 private:
  int rate_ = 0;
  std::vector<double> boundaries_;
};

/// Conditional message pmfs P(u | H0) and P(u | H1) of one sensor.
struct SensorPmfPair {
  std::vector<double> p0;
  std::vector<double> p1;

  std::size_t size() const { return p0.size(); }

  /// Throws std::domain_error unless both vectors are nonempty, equally
  /// long, nonnegative and sum to one within `tol`.
  void Validate(double tol = 1e-12) const;
};

SensorPmfPair conditional_pmf(const Quantizer& q, const ObservationModel& model);

// {"rate": r, "boundaries": [...]}; doubles round-trip exactly.
void to_json(nlohmann::json& j, const Quantizer& q);
void from_json(const nlohmann::json& j, Quantizer& q);

}  // namespace ratealloc

#endif  // RATEALLOC_QUANTIZER_HPP_
