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


#include "ratealloc/experiments.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "ratealloc/csv.hpp"
#include "ratealloc/detection.hpp"
#include "ratealloc/parallel.hpp"

namespace ratealloc {

DesignerConfig FigureDesignerConfig() {
  DesignerConfig cfg;
  cfg.eta = 1e-8;
  cfg.restarts = 16;
  cfg.seed = kFigureSeed;
  return cfg;
}

std::vector<double> DefaultFig2Snrs() { return {-2.0, -1.0, 0.0, 1.0, 2.0}; }

std::vector<double> DefaultFig4Snrs() {
  std::vector<double> snrs;
  for (int db = -5; db <= 5; ++db) snrs.push_back(db);
  return snrs;
}

std::vector<RateAllocation> DefaultFig4Allocations() {
  return {RateAllocation({4, 4, 4, 0, 0, 0}), RateAllocation({3, 3, 3, 3, 0, 0}),
          RateAllocation({5, 3, 1, 1, 1, 1}), RateAllocation({3, 3, 2, 2, 1, 1}),
          RateAllocation({2, 2, 2, 2, 2, 2})};
}

ChernoffCurve DesignCurve(const SensorDesigner& designer, double snr_db, int max_rate) {
  if (max_rate < 0) throw std::domain_error("max_rate must be nonnegative");
  const ObservationModel model = model_from_snr_db(snr_db);
  ChernoffCurve curve;
  for (int r = 0; r <= max_rate; ++r) {
    curve.rates.push_back(r);
    curve.values.push_back(designer.Design(r, model).chernoff);
  }
  return curve;
}

std::vector<Fig2Row> Fig2(const std::vector<double>& snrs_db, int max_rate) {
  const SensorDesigner bb(DesignMethod::kBb);
  std::vector<Fig2Row> rows;
  for (double snr : snrs_db) {
    const ChernoffCurve curve = DesignCurve(bb, snr, max_rate);
    for (std::size_t i = 0; i < curve.rates.size(); ++i) {
      rows.push_back({snr, curve.rates[i], curve.values[i]});
    }
  }
  return rows;
}

void WriteFig2Csv(std::ostream& out, const std::vector<Fig2Row>& rows) {
  csv::Table table{{"snr_db", "rate", "chernoff"}, {}};
  for (const auto& r : rows) {
    table.rows.push_back(
        {csv::FormatDouble(r.snr_db), std::to_string(r.rate), csv::FormatDouble(r.chernoff)});
  }
  csv::WriteTable(out, table);
}

std::vector<Fig3Row> Fig3(double snr_db, int max_rate, const DesignerConfig& cfg) {
  const SensorDesigner bb(DesignMethod::kBb);
  const SensorDesigner numerical(DesignMethod::kNumerical, cfg);
  const ChernoffCurve c_bb = DesignCurve(bb, snr_db, max_rate);
  const ChernoffCurve c_num = DesignCurve(numerical, snr_db, max_rate);
  const double c_inf = chernoff_raw(model_from_snr_db(snr_db));
  std::vector<Fig3Row> rows;
  for (std::size_t i = 0; i < c_bb.rates.size(); ++i) {
    rows.push_back({c_bb.rates[i], c_bb.values[i], c_num.values[i], c_inf});
  }
  return rows;
}

void WriteFig3Csv(std::ostream& out, const std::vector<Fig3Row>& rows) {
  csv::Table table{{"rate", "c_bb", "c_numerical", "c_inf"}, {}};
  for (const auto& r : rows) {
    table.rows.push_back({std::to_string(r.rate), csv::FormatDouble(r.c_bb),
                          csv::FormatDouble(r.c_numerical), csv::FormatDouble(r.c_inf)});
  }
  csv::WriteTable(out, table);
}

std::vector<Fig4Row> Fig4(const std::vector<double>& snrs_db,
                          const std::vector<RateAllocation>& allocations,
                          const DesignerConfig& cfg) {
  std::vector<Fig4Row> rows(snrs_db.size() * allocations.size());
  ParallelFor(snrs_db.size(), [&](std::size_t s) {
    const ObservationModel model = model_from_snr_db(snrs_db[s]);
    const SensorDesigner designer(DesignMethod::kNumerical, cfg);
    for (std::size_t a = 0; a < allocations.size(); ++a) {
      NetworkConfig net{{}, model, {}};
      for (int r : allocations[a].rates()) net.quantizers.push_back(designer.Design(r, model).quantizer);
      rows[s * allocations.size() + a] = {snrs_db[s], allocations[a].ToString(),
                                          exact_map_error(net)};
    }
  });
  return rows;
}

void WriteFig4Csv(std::ostream& out, const std::vector<Fig4Row>& rows) {
  csv::Table table{{"snr_db", "allocation", "log10_pe"}, {}};
  for (const auto& r : rows) {
    table.rows.push_back(
        {csv::FormatDouble(r.snr_db), r.allocation, csv::FormatDouble(std::log10(r.pe))});
  }
  csv::WriteTable(out, table);
}

std::vector<ConcavityRow> ConcavityCheck(const SensorDesigner& designer,
                                         const std::vector<double>& snrs_db, int max_rate,
                                         double slack) {
  std::vector<ConcavityRow> rows;
  for (double snr : snrs_db) {
    ChernoffCurve curve = DesignCurve(designer, snr, max_rate);
    ConcavityReport report = is_discrete_concave(curve.values, slack);
    rows.push_back({snr, std::move(curve), std::move(report)});
  }
  return rows;
}

void WriteConcavityCsv(std::ostream& out, const std::vector<ConcavityRow>& rows) {
  csv::Table table{{"snr_db", "rate", "chernoff", "concave"}, {}};
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.curve.rates.size(); ++i) {
      table.rows.push_back({csv::FormatDouble(r.snr_db), std::to_string(r.curve.rates[i]),
                            csv::FormatDouble(r.curve.values[i]),
                            r.report.concave ? "1" : "0"});
    }
  }
  csv::WriteTable(out, table);
}

void WriteGnuplotScript(std::ostream& out, const std::string& figure,
                        const std::string& data_path) {
  out << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set grid\n";
  if (figure == "fig2") {
    out << "set xlabel 'r (bits)'\nset ylabel 'Chernoff information (nats)'\n"
        << "plot for [s in \"-2 -1 0 1 2\"] '" << data_path
        << "' using 2:($1 == s ? $3 : 1/0) with linespoints title sprintf('E = %s dB', s)\n";
  } else if (figure == "fig3") {
    out << "set xlabel 'r (bits)'\nset ylabel 'Chernoff information (nats)'\n"
        << "plot '" << data_path << "' using 1:2 with linespoints title 'compander', \\\n"
        << "     '" << data_path << "' using 1:3 with linespoints title 'numerical', \\\n"
        << "     '" << data_path << "' using 1:4 with lines dashtype 2 title 'raw observation'\n";
  } else if (figure == "fig4") {
    out << "set xlabel 'E (dB)'\nset ylabel 'log10 P_E'\n"
        << "plot for [a in \"4-4-4-0-0-0 3-3-3-3-0-0 5-3-1-1-1-1 3-3-2-2-1-1 2-2-2-2-2-2\"] '"
        << data_path << "' using 1:(strcol(2) eq a ? $3 : 1/0) with linespoints title a\n";
  } else {
    throw std::invalid_argument("unknown figure '" + figure + "'");
  }
}

}  // namespace ratealloc
