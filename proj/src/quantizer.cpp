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


#include "ratealloc/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ratealloc/errors.hpp"

namespace ratealloc {

std::size_t CellCount(int rate) {
  if (rate < 0) throw std::domain_error("rate must be nonnegative");
  if (rate > kMaxRate) {
    throw CapacityError("rate " + std::to_string(rate) + " exceeds the cap of " +
                        std::to_string(kMaxRate) + " bits");
  }
  return std::size_t{1} << rate;
}

Quantizer::Quantizer(int rate, std::vector<double> boundaries)
    : rate_(rate), boundaries_(std::move(boundaries)) {
  if (boundaries_.size() != CellCount(rate) - 1) {
    throw std::domain_error("a rate-" + std::to_string(rate) + " quantizer needs " +
                            std::to_string(CellCount(rate) - 1) + " boundaries, got " +
                            std::to_string(boundaries_.size()));
  }
  if (std::any_of(boundaries_.begin(), boundaries_.end(),
                  [](double b) { return std::isnan(b); })) {
    throw std::domain_error("quantizer boundary is NaN");
  }
  if (!std::is_sorted(boundaries_.begin(), boundaries_.end())) {
    throw std::domain_error("quantizer boundaries must be nondecreasing");
  }
}

double Quantizer::LowerEdge(std::size_t cell) const {
  return cell == 0 ? -INFINITY : boundaries_.at(cell - 1);
}

double Quantizer::UpperEdge(std::size_t cell) const {
  return cell == boundaries_.size() ? INFINITY : boundaries_.at(cell);
}

std::size_t Quantizer::Quantize(double x) const {
  return static_cast<std::size_t>(
      std::upper_bound(boundaries_.begin(), boundaries_.end(), x) - boundaries_.begin());
}

void SensorPmfPair::Validate(double tol) const {
  if (p0.empty() || p0.size() != p1.size()) {
    throw std::domain_error("pmf pair must be nonempty and of equal length");
  }
  for (const auto* p : {&p0, &p1}) {
    double sum = 0.0;
    for (double v : *p) {
      if (!(v >= 0.0)) throw std::domain_error("pmf entries must be nonnegative");
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol) throw std::domain_error("pmf does not sum to one");
  }
}

SensorPmfPair conditional_pmf(const Quantizer& q, const ObservationModel& model) {
  const std::size_t k = q.cell_count();
  SensorPmfPair out{std::vector<double>(k), std::vector<double>(k)};
  for (std::size_t u = 0; u < k; ++u) {
    const double lo = q.LowerEdge(u);
    const double hi = q.UpperEdge(u);
    out.p0[u] = model.IntervalProbability(Hypothesis::kH0, lo, hi);
    out.p1[u] = model.IntervalProbability(Hypothesis::kH1, lo, hi);
  }
  return out;
}

void to_json(nlohmann::json& j, const Quantizer& q) {
  j = nlohmann::json{{"rate", q.rate()}, {"boundaries", q.boundaries()}};
}

void from_json(const nlohmann::json& j, Quantizer& q) {
  q = Quantizer(j.at("rate").get<int>(), j.at("boundaries").get<std::vector<double>>());
}

}  // namespace ratealloc
