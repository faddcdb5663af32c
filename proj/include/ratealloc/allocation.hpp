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


#ifndef RATEALLOC_ALLOCATION_HPP_
#define RATEALLOC_ALLOCATION_HPP_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "ratealloc/design.hpp"
#include "ratealloc/observation_model.hpp"

namespace ratealloc {

/// Per-sensor rates in bits under a sum-rate cap. Stored sorted
/// nonincreasing, which is the canonical form used for comparisons.
class RateAllocation {
 public:
  /// Throws std::domain_error for an empty list, negative rates, a negative
  /// cap or a sum above the cap.
  RateAllocation(std::vector<int> rates, int sum_rate_cap);

  /// Cap defaults to the sum of the rates.
  explicit RateAllocation(std::vector<int> rates);

  const std::vector<int>& rates() const { return rates_; }
  int sum_rate_cap() const { return cap_; }
  std::size_t sensor_count() const { return rates_.size(); }
  int total() const;
  int max_rate() const { return rates_.front(); }
  int min_rate() const { return rates_.back(); }
  int spread() const { return max_rate() - min_rate(); }
  long long sum_of_squares() const;

  /// Hyphen-joined rates, e.g. "2-2-2-2-2-2".
  std::string ToString() const;
  /// Parses the hyphen-joined form; the cap defaults to the sum.
  static RateAllocation Parse(const std::string& text);

  bool operator==(const RateAllocation& other) const { return rates_ == other.rates_; }

 private:
  std::vector<int> rates_;
  int cap_;
};

/// Every nonincreasing vector of `n_sensors` nonnegative rates summing to
/// exactly `total_rate`, in descending lexicographic order. Throws
/// CapacityError if there are more than 10^6.
std::vector<RateAllocation> enumerate_allocations(int n_sensors, int total_rate);

/// Replaces the smallest and largest rates by the floor and ceiling of their
/// mean. Fixed point when the spread is at most one.
RateAllocation rebalance_step(const RateAllocation& alloc);

struct RebalanceTrace {
  RateAllocation final_allocation;
  std::vector<RateAllocation> steps;  // allocation after each changing step
};

/// Applies rebalance_step until the spread is at most one.
RebalanceTrace rebalance_to_uniform(const RateAllocation& alloc);

struct AllocationScore {
  RateAllocation allocation;
  ChernoffResult network;              // shared-alpha network Chernoff
  std::vector<double> per_sensor;      // individually maximized values
};

AllocationScore score_allocation(const RateAllocation& alloc, const ObservationModel& model,
                                 const SensorDesigner& designer);

struct AllocationSearch {
  AllocationScore best;
  std::vector<AllocationScore> ranked;  // best first
};

/// Exhaustive search over enumerate_allocations. Ranking is by network
/// Chernoff, descending; values within kScoreTieTolerance count as ties and
/// go to the smaller spread, then the lexicographically larger rate vector.
AllocationSearch best_allocation(int n_sensors, int total_rate, const ObservationModel& model,
                                 const SensorDesigner& designer);

inline constexpr double kScoreTieTolerance = 1e-12;

/// CSV `allocation,network_chernoff`.
void WriteRankedCsv(std::ostream& out, const std::vector<AllocationScore>& ranked);

}  // namespace ratealloc

#endif  // RATEALLOC_ALLOCATION_HPP_
