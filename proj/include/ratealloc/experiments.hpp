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


#ifndef RATEALLOC_EXPERIMENTS_HPP_
#define RATEALLOC_EXPERIMENTS_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "ratealloc/allocation.hpp"
#include "ratealloc/chernoff.hpp"
#include "ratealloc/design.hpp"

namespace ratealloc {

/// Numerical-designer settings used by the figure reproductions: 16 starts,
/// eta = 1e-8 and a fixed seed.
DesignerConfig FigureDesignerConfig();

inline constexpr std::uint64_t kFigureSeed = 20150401;

std::vector<double> DefaultFig2Snrs();                 // -2, -1, 0, 1, 2 dB
std::vector<double> DefaultFig4Snrs();                 // -5 .. 5 dB in 1 dB steps
std::vector<RateAllocation> DefaultFig4Allocations();  // the five N = 6, R = 12 schemes

/// Exact Chernoff information per rate for one design method and SNR,
/// rates 0 .. max_rate.
ChernoffCurve DesignCurve(const SensorDesigner& designer, double snr_db, int max_rate);

struct Fig2Row {
  double snr_db;
  int rate;
  double chernoff;
};
/// Compander designs evaluated exactly through the message pmfs.
std::vector<Fig2Row> Fig2(const std::vector<double>& snrs_db, int max_rate = 7);
void WriteFig2Csv(std::ostream& out, const std::vector<Fig2Row>& rows);

struct Fig3Row {
  int rate;
  double c_bb;
  double c_numerical;
  double c_inf;
};
std::vector<Fig3Row> Fig3(double snr_db = 0.0, int max_rate = 7,
                          const DesignerConfig& cfg = FigureDesignerConfig());
void WriteFig3Csv(std::ostream& out, const std::vector<Fig3Row>& rows);

struct Fig4Row {
  double snr_db;
  std::string allocation;
  double pe;
};
/// Numerical designs, redesigned per SNR, scored by exact MAP error at T = 1.
std::vector<Fig4Row> Fig4(const std::vector<double>& snrs_db,
                          const std::vector<RateAllocation>& allocations,
                          const DesignerConfig& cfg = FigureDesignerConfig());
/// `snr_db,allocation,log10_pe`
void WriteFig4Csv(std::ostream& out, const std::vector<Fig4Row>& rows);

struct ConcavityRow {
  double snr_db;
  ChernoffCurve curve;
  ConcavityReport report;
};
std::vector<ConcavityRow> ConcavityCheck(const SensorDesigner& designer,
                                         const std::vector<double>& snrs_db, int max_rate,
                                         double slack = 1e-9);
/// `snr_db,rate,chernoff,concave`
void WriteConcavityCsv(std::ostream& out, const std::vector<ConcavityRow>& rows);

/// Gnuplot script plotting a figure CSV. `figure` is "fig2", "fig3" or "fig4".
void WriteGnuplotScript(std::ostream& out, const std::string& figure,
                        const std::string& data_path);

}  // namespace ratealloc

#endif  // RATEALLOC_EXPERIMENTS_HPP_
