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


#include "ratealloc/chernoff.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "ratealloc/csv.hpp"
#include "ratealloc/numerics.hpp"

namespace ratealloc {

namespace {

// sum_u p0^alpha p1^(1-alpha) with the zero-cell conventions.
double AffinitySum(const SensorPmfPair& pmfs, double alpha) {
  double sum = 0.0;
  for (std::size_t u = 0; u < pmfs.size(); ++u) {
    const double a = pmfs.p0[u];
    const double b = pmfs.p1[u];
    if (a > 0.0 && b > 0.0) {
      sum += std::exp(alpha * std::log(a) + (1.0 - alpha) * std::log(b));
    } else if (a > 0.0) {
      if (alpha == 1.0) sum += a;
    } else if (b > 0.0) {
      if (alpha == 0.0) sum += b;
    }
  }
  return sum;
}

void CheckAlpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::domain_error("alpha must lie in [0, 1]");
  }
}

// Rounding can push -log(sum) a few ulps below zero; the exact value is
// nonnegative for alpha in [0, 1].
double NegLog(double sum) { return std::max(0.0, -std::log(sum)); }

}  // namespace

double chernoff_at_alpha(const SensorPmfPair& pmfs, double alpha) {
  CheckAlpha(alpha);
  if (pmfs.p0.size() != pmfs.p1.size()) {
    throw std::domain_error("pmf pair lengths differ");
  }
  return NegLog(AffinitySum(pmfs, alpha));
}

ChernoffResult chernoff_information(const SensorPmfPair& pmfs) {
  if (pmfs.p0 == pmfs.p1) return {0.0, 0.5};
  const Maximum best = maximize_concave_1d(
      [&](double alpha) { return chernoff_at_alpha(pmfs, alpha); }, 0.0, 1.0);
  if (best.value <= 0.0) return {0.0, 0.5};
  return {best.value, best.argmax};
}

ChernoffResult network_chernoff(std::span<const SensorPmfPair> sensors) {
  if (sensors.empty()) throw std::domain_error("network_chernoff: no sensors");
  const auto total = [&](double alpha) {
    double sum = 0.0;
    for (const auto& s : sensors) sum += chernoff_at_alpha(s, alpha);
    return sum;
  };
  const Maximum best = maximize_concave_1d(total, 0.0, 1.0);
  if (best.value <= 0.0) return {0.0, 0.5};
  return {best.value, best.argmax};
}

double chernoff_raw(const ObservationModel& model) {
  const double m = model.amplitude();
  return 0.5 * m * m;
}

ConcavityReport is_discrete_concave(std::span<const double> values, double slack) {
  if (values.size() < 3) {
    throw std::domain_error("discrete concavity needs at least three values");
  }
  if (!(slack >= 0.0)) throw std::domain_error("slack must be nonnegative");
  ConcavityReport report;
  for (std::size_t k = 1; k + 1 < values.size(); ++k) {
    if (values[k - 1] + values[k + 1] > 2.0 * values[k] + slack) {
      report.concave = false;
      report.violations.push_back(k);
    }
  }
  return report;
}

void ChernoffCurve::Validate() const {
  if (rates.size() != values.size()) {
    throw std::domain_error("ChernoffCurve: rates and values differ in length");
  }
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (rates[i] < 0) throw std::domain_error("ChernoffCurve: negative rate");
    if (i > 0 && rates[i] <= rates[i - 1]) {
      throw std::domain_error("ChernoffCurve: rates must be strictly increasing");
    }
    if (!(values[i] >= 0.0)) throw std::domain_error("ChernoffCurve: negative value");
  }
}

bool ChernoffCurve::IsNondecreasing(double slack) const {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] + slack < values[i - 1]) return false;
  }
  return true;
}

void ChernoffCurve::WriteCsv(std::ostream& out) const {
  Validate();
  csv::Table table{{"rate", "chernoff"}, {}};
  for (std::size_t i = 0; i < rates.size(); ++i) {
    table.rows.push_back({std::to_string(rates[i]), csv::FormatDouble(values[i])});
  }
  csv::WriteTable(out, table);
}

ChernoffCurve ChernoffCurve::ReadCsv(std::istream& in) {
  const csv::Table table = csv::ReadTable(in);
  if (table.header != csv::Row{"rate", "chernoff"}) {
    throw std::runtime_error("ChernoffCurve: unexpected CSV header");
  }
  ChernoffCurve curve;
  for (const auto& row : table.rows) {
    curve.rates.push_back(static_cast<int>(csv::ParseInt(row[0])));
    curve.values.push_back(csv::ParseDouble(row[1]));
  }
  curve.Validate();
  return curve;
}

}  // namespace ratealloc
