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


#include "ratealloc/detection.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "ratealloc/csv.hpp"
#include "ratealloc/errors.hpp"
#include "ratealloc/parallel.hpp"
#include "ratealloc/random.hpp"

namespace ratealloc {

void NetworkConfig::Validate() const {
  if (quantizers.empty()) throw std::domain_error("network has no sensors");
  if (!(priors.pi0 >= 0.0 && priors.pi1 >= 0.0) ||
      std::abs(priors.pi0 + priors.pi1 - 1.0) > 1e-12) {
    throw std::domain_error("priors must be nonnegative and sum to one");
  }
}

namespace {

std::vector<SensorPmfPair> SnapshotPmfs(const NetworkConfig& config, int snapshots) {
  if (snapshots < 1) throw std::domain_error("snapshots must be >= 1");
  std::vector<SensorPmfPair> pmfs;
  for (const auto& q : config.quantizers) pmfs.push_back(conditional_pmf(q, config.model));
  std::vector<SensorPmfPair> all;
  for (int t = 0; t < snapshots; ++t) all.insert(all.end(), pmfs.begin(), pmfs.end());
  return all;
}

// Depth-first walk of the mixed-radix message space; each leaf adds
// max_j pi_j P(u | H_j) for one message vector.
double SumOfMaxima(const std::vector<SensorPmfPair>& sensors, std::size_t depth, double a0,
                   double a1) {
  if (depth == sensors.size()) return std::max(a0, a1);
  const auto& s = sensors[depth];
  double sum = 0.0;
  for (std::size_t u = 0; u < s.size(); ++u) {
    const double b0 = a0 * s.p0[u];
    const double b1 = a1 * s.p1[u];
    if (b0 == 0.0 && b1 == 0.0) continue;
    sum += SumOfMaxima(sensors, depth + 1, b0, b1);
  }
  return sum;
}

}  // namespace

double exact_map_error(const NetworkConfig& config, int snapshots) {
  config.Validate();
  const std::vector<SensorPmfPair> sensors = SnapshotPmfs(config, snapshots);
  std::uint64_t space = 1;
  for (const auto& s : sensors) {
    space *= s.size();
    if (space > kMaxExactMessages) {
      throw CapacityError("product message space exceeds 2^24 vectors");
    }
  }
  const double correct = SumOfMaxima(sensors, 0, config.priors.pi0, config.priors.pi1);
  return std::clamp(1.0 - correct, 0.0, 1.0);
}

McEstimate monte_carlo_error(const NetworkConfig& config, const McConfig& mc) {
  config.Validate();
  if (mc.snapshots < 1) throw std::domain_error("snapshots must be >= 1");
  if (mc.trials < 1) throw std::domain_error("trials must be >= 1");

  // llr[n][u] = log P(u|H1) - log P(u|H0); NaN marks a cell empty under both.
  std::vector<std::vector<double>> llr;
  for (const auto& q : config.quantizers) {
    const SensorPmfPair p = conditional_pmf(q, config.model);
    std::vector<double> table(p.size());
    for (std::size_t u = 0; u < p.size(); ++u) {
      if (p.p0[u] == 0.0 && p.p1[u] == 0.0) {
        table[u] = NAN;
      } else {
        table[u] = std::log(p.p1[u]) - std::log(p.p0[u]);
      }
    }
    llr.push_back(std::move(table));
  }
  const double threshold = std::log(config.priors.pi0) - std::log(config.priors.pi1);

  constexpr std::int64_t kBlock = 4096;
  const std::int64_t blocks = (mc.trials + kBlock - 1) / kBlock;
  std::vector<std::int64_t> block_errors(static_cast<std::size_t>(blocks), 0);
  ParallelFor(block_errors.size(), [&](std::size_t blk) {
    const std::int64_t begin = static_cast<std::int64_t>(blk) * kBlock;
    const std::int64_t end = std::min(mc.trials, begin + kBlock);
    std::int64_t errors = 0;
    for (std::int64_t trial = begin; trial < end; ++trial) {
      Xoshiro256ss rng = Xoshiro256ss::ForStream(mc.seed, static_cast<std::uint64_t>(trial));
      const Hypothesis truth =
          rng.Uniform() < config.priors.pi1 ? Hypothesis::kH1 : Hypothesis::kH0;
      double sum = 0.0;
      for (int t = 0; t < mc.snapshots; ++t) {
        for (std::size_t n = 0; n < config.quantizers.size(); ++n) {
          const double x = config.model.Sample(truth, rng);
          const double l = llr[n][config.quantizers[n].Quantize(x)];
          if (std::isnan(l)) {
            throw std::logic_error("observation landed in a cell empty under both hypotheses");
          }
          sum += l;
        }
      }
      const Hypothesis decision = sum > threshold ? Hypothesis::kH1 : Hypothesis::kH0;
      if (decision != truth) ++errors;
    }
    block_errors[blk] = errors;
  });

  McEstimate out;
  out.trials = mc.trials;
  for (std::int64_t e : block_errors) out.errors += e;
  out.estimate = static_cast<double>(out.errors) / static_cast<double>(out.trials);
  out.std_err = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(out.trials));
  return out;
}

std::vector<ExponentPoint> exponent_estimate(const NetworkConfig& config,
                                             const std::vector<int>& t_values,
                                             std::int64_t trials_per_t, std::uint64_t seed) {
  std::vector<ExponentPoint> out;
  for (int t : t_values) {
    if (t < 1) throw std::domain_error("snapshot counts must be >= 1");
    McConfig mc{t, trials_per_t, SplitMix64(seed + static_cast<std::uint64_t>(t)).Next()};
    ExponentPoint point;
    point.snapshots = t;
    point.estimate = monte_carlo_error(config, mc);
    double pe = point.estimate.estimate;
    if (point.estimate.errors == 0) {
      point.lower_bound = true;
      pe = 1.0 / static_cast<double>(trials_per_t);
    }
    point.exponent = -std::log(pe) / t;
    out.push_back(point);
  }
  return out;
}

void WriteExactCsv(std::ostream& out, const std::vector<ExactErrorRow>& rows) {
  csv::Table table{{"snr_db", "allocation", "pe", "log10_pe"}, {}};
  for (const auto& r : rows) {
    table.rows.push_back({csv::FormatDouble(r.snr_db), r.allocation, csv::FormatDouble(r.pe),
                          csv::FormatDouble(std::log10(r.pe))});
  }
  csv::WriteTable(out, table);
}

void WriteMcCsv(std::ostream& out, const std::vector<McErrorRow>& rows) {
  csv::Table table{{"snr_db", "allocation", "T", "estimate", "std_err"}, {}};
  for (const auto& r : rows) {
    table.rows.push_back({csv::FormatDouble(r.snr_db), r.allocation, std::to_string(r.snapshots),
                          csv::FormatDouble(r.estimate.estimate),
                          csv::FormatDouble(r.estimate.std_err)});
  }
  csv::WriteTable(out, table);
}

}  // namespace ratealloc
