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


#include "ratealloc/allocation.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ratealloc/csv.hpp"
#include "ratealloc/errors.hpp"
#include "ratealloc/parallel.hpp"

namespace ratealloc {

namespace {

constexpr std::size_t kMaxAllocations = 1'000'000;

int Sum(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

}  // namespace

RateAllocation::RateAllocation(std::vector<int> rates, int sum_rate_cap)
    : rates_(std::move(rates)), cap_(sum_rate_cap) {
  if (rates_.empty()) throw std::domain_error("allocation needs at least one sensor");
  if (std::any_of(rates_.begin(), rates_.end(), [](int r) { return r < 0; })) {
    throw std::domain_error("rates must be nonnegative");
  }
  if (cap_ < 0) throw std::domain_error("sum-rate cap must be nonnegative");
  if (Sum(rates_) > cap_) throw std::domain_error("allocation exceeds the sum-rate cap");
  std::sort(rates_.begin(), rates_.end(), std::greater<>());
}

RateAllocation::RateAllocation(std::vector<int> rates)
    : RateAllocation(rates, Sum(rates)) {}

int RateAllocation::total() const { return Sum(rates_); }

long long RateAllocation::sum_of_squares() const {
  long long s = 0;
  for (int r : rates_) s += static_cast<long long>(r) * r;
  return s;
}

std::string RateAllocation::ToString() const {
  std::string out;
  for (std::size_t i = 0; i < rates_.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(rates_[i]);
  }
  return out;
}

RateAllocation RateAllocation::Parse(const std::string& text) {
  std::vector<int> rates;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, '-')) {
    try {
      rates.push_back(static_cast<int>(csv::ParseInt(field)));
    } catch (const std::invalid_argument&) {
      throw std::domain_error("malformed allocation '" + text + "'");
    }
  }
  if (text.empty() || text.back() == '-') {
    throw std::domain_error("malformed allocation '" + text + "'");
  }
  return RateAllocation(std::move(rates));
}

std::vector<RateAllocation> enumerate_allocations(int n_sensors, int total_rate) {
  if (n_sensors < 1) throw std::domain_error("need at least one sensor");
  if (total_rate < 0) throw std::domain_error("total rate must be nonnegative");

  std::vector<RateAllocation> out;
  std::vector<int> current;
  current.reserve(static_cast<std::size_t>(n_sensors));
  // Parts chosen largest first; remaining slots are zero-filled.
  const std::function<void(int, int)> extend = [&](int remaining, int max_part) {
    if (remaining == 0) {
      std::vector<int> rates = current;
      rates.resize(static_cast<std::size_t>(n_sensors), 0);
      if (out.size() == kMaxAllocations) {
        throw CapacityError("more than 10^6 rate allocations");
      }
      out.emplace_back(std::move(rates), total_rate);
      return;
    }
    const int slots = n_sensors - static_cast<int>(current.size());
    if (slots == 0) return;
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      // The remaining slots cannot absorb more than slots * part.
      if (static_cast<long long>(part) * slots < remaining) break;
      current.push_back(part);
      extend(remaining - part, part);
      current.pop_back();
    }
  };
  extend(total_rate, total_rate);
  return out;
}

RateAllocation rebalance_step(const RateAllocation& alloc) {
  if (alloc.spread() <= 1) return alloc;
  std::vector<int> rates = alloc.rates();
  const int sum = rates.front() + rates.back();
  rates.front() = sum / 2;
  rates.back() = sum - sum / 2;
  return RateAllocation(std::move(rates), alloc.sum_rate_cap());
}

RebalanceTrace rebalance_to_uniform(const RateAllocation& alloc) {
  RebalanceTrace trace{alloc, {}};
  while (trace.final_allocation.spread() > 1) {
    RateAllocation next = rebalance_step(trace.final_allocation);
    if (next.sum_of_squares() >= trace.final_allocation.sum_of_squares()) {
      throw std::logic_error("rebalance step failed to reduce the sum of squares");
    }
    trace.steps.push_back(next);
    trace.final_allocation = std::move(next);
  }
  return trace;
}

AllocationScore score_allocation(const RateAllocation& alloc, const ObservationModel& model,
                                 const SensorDesigner& designer) {
  std::vector<SensorPmfPair> sensors;
  AllocationScore score{alloc, {}, {}};
  for (int rate : alloc.rates()) {
    const DesignResult d = designer.Design(rate, model);
    sensors.push_back(conditional_pmf(d.quantizer, model));
    score.per_sensor.push_back(chernoff_information(sensors.back()).value);
  }
  score.network = network_chernoff(sensors);
  return score;
}

AllocationSearch best_allocation(int n_sensors, int total_rate, const ObservationModel& model,
                                 const SensorDesigner& designer) {
  const std::vector<RateAllocation> candidates = enumerate_allocations(n_sensors, total_rate);

  // Warm the design cache one rate at a time so concurrent scoring only reads.
  std::vector<bool> seen(static_cast<std::size_t>(total_rate) + 1, false);
  for (const auto& c : candidates) {
    for (int r : c.rates()) {
      if (!seen[static_cast<std::size_t>(r)]) {
        seen[static_cast<std::size_t>(r)] = true;
        designer.Design(r, model);
      }
    }
  }

  std::vector<AllocationScore> scores(candidates.size(),
                                      AllocationScore{candidates.front(), {}, {}});
  ParallelFor(candidates.size(), [&](std::size_t i) {
    scores[i] = score_allocation(candidates[i], model, designer);
  });

  std::stable_sort(scores.begin(), scores.end(), [](const auto& a, const auto& b) {
    return a.network.value > b.network.value;
  });
  auto group_begin = scores.begin();
  while (group_begin != scores.end()) {
    auto group_end = group_begin + 1;
    while (group_end != scores.end() &&
           (group_end - 1)->network.value - group_end->network.value <= kScoreTieTolerance) {
      ++group_end;
    }
    std::sort(group_begin, group_end, [](const auto& a, const auto& b) {
      if (a.allocation.spread() != b.allocation.spread()) {
        return a.allocation.spread() < b.allocation.spread();
      }
      return a.allocation.rates() > b.allocation.rates();
    });
    group_begin = group_end;
  }
  return {scores.front(), std::move(scores)};
}

void WriteRankedCsv(std::ostream& out, const std::vector<AllocationScore>& ranked) {
  csv::Table table{{"allocation", "network_chernoff"}, {}};
  for (const auto& s : ranked) {
    table.rows.push_back({s.allocation.ToString(), csv::FormatDouble(s.network.value)});
  }
  csv::WriteTable(out, table);
}

}  // namespace ratealloc
