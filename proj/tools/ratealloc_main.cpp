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


// ratealloc: quantizer design, Chernoff information, rate allocation and
// fusion-center error probabilities for sum-rate constrained sensor networks.
//
// Exit codes: 0 success, 1 runtime or capacity failure (or a failed
// concavity check), 2 usage error.
//
// SNR convention: E = m^2 in dB, so the amplitude is m = 10^(snr_db / 20).

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ratealloc/allocation.hpp"
#include "ratealloc/csv.hpp"
#include "ratealloc/design.hpp"
#include "ratealloc/detection.hpp"
#include "ratealloc/errors.hpp"
#include "ratealloc/experiments.hpp"

namespace {

using namespace ratealloc;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> Split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double ParseSnr(const std::string& text) {
  try {
    const double v = csv::ParseDouble(text);
    if (!std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::invalid_argument&) {
    throw UsageError("invalid SNR '" + text + "'");
  }
}

std::vector<double> ParseSnrList(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : Split(text, ',')) out.push_back(ParseSnr(part));
  if (out.empty()) throw UsageError("empty SNR list");
  return out;
}

// "lo..hi" or a single rate.
std::pair<int, int> ParseRateRange(const std::string& text) {
  try {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
      const int r = static_cast<int>(csv::ParseInt(text));
      return {r, r};
    }
    const int lo = static_cast<int>(csv::ParseInt(text.substr(0, dots)));
    const int hi = static_cast<int>(csv::ParseInt(text.substr(dots + 2)));
    if (lo < 0 || hi < lo || hi > kMaxRate) throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const std::invalid_argument&) {
    throw UsageError("invalid rate range '" + text + "' (expected lo..hi within 0.." +
                     std::to_string(kMaxRate) + ")");
  }
}

RateAllocation ParseAllocation(const std::string& text) {
  try {
    return RateAllocation::Parse(text);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
}

std::vector<int> ParsePositiveList(const std::string& text, const std::string& what) {
  std::vector<int> out;
  for (const auto& part : Split(text, ',')) {
    try {
      const long long v = csv::ParseInt(part);
      if (v < 1) throw std::invalid_argument(part);
      out.push_back(static_cast<int>(v));
    } catch (const std::invalid_argument&) {
      throw UsageError("invalid " + what + " '" + part + "'");
    }
  }
  if (out.empty()) throw UsageError("empty " + what + " list");
  return out;
}

// Options shared by commands that design quantizers.
struct DesignOptions {
  std::string method = "numerical";
  DesignerConfig cfg = FigureDesignerConfig();
  std::string cache_dir;

  void Register(CLI::App* cmd, bool with_method) {
    if (with_method) {
      cmd->add_option("--method", method, "Sensor design method")
          ->check(CLI::IsMember({"bb", "numerical"}))
          ->capture_default_str();
    }
    cmd->add_option("--eta", cfg.eta, "Numerical designer: stop when a sweep gains less")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--restarts", cfg.restarts, "Numerical designer: random starts")
        ->check(CLI::Range(1, 100000))
        ->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "Numerical designer: RNG seed")->capture_default_str();
    cmd->add_option("--grid-points", cfg.grid_points, "Numerical designer: coarse grid size")
        ->check(CLI::Range(2, 1000000))
        ->capture_default_str();
    cmd->add_option("--max-iters", cfg.max_iters, "Numerical designer: sweep limit")
        ->check(CLI::Range(1, 100000000))
        ->capture_default_str();
    cmd->add_option("--cache-dir", cache_dir, "Directory for cached quantizer JSON files");
  }

  std::unique_ptr<SensorDesigner> MakeDesigner() const {
    auto designer = std::make_unique<SensorDesigner>(ParseDesignMethod(method), cfg);
    if (!cache_dir.empty()) designer->SetCacheDirectory(cache_dir);
    return designer;
  }
};

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void Finish() {
    stream().flush();
    if (!stream()) throw std::runtime_error("write failed");
  }

 private:
  std::ofstream file_;
};

void WriteGnuplot(const std::string& script_path, const std::string& figure,
                  const std::string& data_path) {
  if (script_path.empty()) return;
  std::ofstream out(script_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + script_path);
  WriteGnuplotScript(out, figure, data_path.empty() ? "-" : data_path);
}

std::vector<Quantizer> DesignNetwork(const RateAllocation& alloc, const ObservationModel& model,
                                     const SensorDesigner& designer) {
  std::vector<Quantizer> qs;
  for (int r : alloc.rates()) qs.push_back(designer.Design(r, model).quantizer);
  return qs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Rate allocation for decentralized detection over a sum-rate constrained channel.\n"
      "SNR is E = m^2 in dB: the signal amplitude is m = 10^(snr_db / 20)."};
  app.require_subcommand(1);

  std::string out_path;
  std::string gnuplot_path;
  DesignOptions design_opts;

  // design
  auto* design = app.add_subcommand("design", "Design one sensor quantizer; JSON output");
  int design_rate = 0;
  std::string design_snr = "0";
  design->add_option("--rate", design_rate, "Rate in bits")->required()->check(CLI::Range(0, 64));
  design->add_option("--snr-db", design_snr, "SNR E = m^2 in dB")->capture_default_str();
  design->add_option("--out", out_path, "Output file (default stdout)");
  design_opts.Register(design, true);

  // fig2
  auto* fig2 = app.add_subcommand("fig2", "Compander Chernoff information vs rate per SNR (CSV)");
  std::string fig2_snrs = "-2,-1,0,1,2";
  std::string fig2_rates = "0..7";
  fig2->add_option("--snr-db", fig2_snrs, "Comma-separated SNRs in dB")->capture_default_str();
  fig2->add_option("--rates", fig2_rates, "Rate range 0..max")->capture_default_str();
  fig2->add_option("--out", out_path, "Output file (default stdout)");
  fig2->add_option("--gnuplot", gnuplot_path, "Also write a gnuplot script here");

  // fig3
  auto* fig3 = app.add_subcommand("fig3", "Compander vs numerical design vs raw observation (CSV)");
  std::string fig3_snr = "0";
  std::string fig3_rates = "0..7";
  fig3->add_option("--snr-db", fig3_snr, "SNR in dB")->capture_default_str();
  fig3->add_option("--rates", fig3_rates, "Rate range 0..max")->capture_default_str();
  fig3->add_option("--out", out_path, "Output file (default stdout)");
  fig3->add_option("--gnuplot", gnuplot_path, "Also write a gnuplot script here");
  design_opts.Register(fig3, false);

  // fig4
  auto* fig4 = app.add_subcommand("fig4", "Exact MAP error for N = 6, R = 12 allocations (CSV)");
  std::string fig4_snrs = "-5,-4,-3,-2,-1,0,1,2,3,4,5";
  std::string fig4_allocs = "4-4-4-0-0-0,3-3-3-3-0-0,5-3-1-1-1-1,3-3-2-2-1-1,2-2-2-2-2-2";
  fig4->add_option("--snr-db", fig4_snrs, "Comma-separated SNRs in dB")->capture_default_str();
  fig4->add_option("--allocations", fig4_allocs, "Comma-separated hyphen-joined allocations")
      ->capture_default_str();
  fig4->add_option("--out", out_path, "Output file (default stdout)");
  fig4->add_option("--gnuplot", gnuplot_path, "Also write a gnuplot script here");
  design_opts.Register(fig4, false);

  // allocate
  auto* allocate = app.add_subcommand("allocate", "Rank every full-budget rate allocation (CSV)");
  int alloc_n = 1;
  int alloc_r = 0;
  std::string alloc_snr = "0";
  allocate->add_option("-n,--sensors", alloc_n, "Number of sensors")
      ->required()
      ->check(CLI::Range(1, 1000000));
  allocate->add_option("-r,--total-rate", alloc_r, "Sum-rate budget R in bits")
      ->required()
      ->check(CLI::Range(0, 1000000));
  allocate->add_option("--snr-db", alloc_snr, "SNR in dB")->capture_default_str();
  allocate->add_option("--out", out_path, "Output file (default stdout)");
  design_opts.Register(allocate, true);

  // concavity
  auto* concavity = app.add_subcommand(
      "concavity", "Check discrete concavity of Chernoff information in rate; exit 0 iff all pass");
  std::string conc_snrs = "-2,-1,0,1,2";
  std::string conc_rates = "0..7";
  double conc_slack = 1e-9;
  concavity->add_option("--snr-db", conc_snrs, "Comma-separated SNRs in dB")
      ->capture_default_str();
  concavity->add_option("--rates", conc_rates, "Rate range 0..max")->capture_default_str();
  concavity->add_option("--slack", conc_slack, "Allowed violation")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  concavity->add_option("--out", out_path, "Output file (default stdout)");
  design_opts.Register(concavity, true);

  // pe
  auto* pe = app.add_subcommand("pe", "Exact single-snapshot MAP error probability (CSV)");
  std::string pe_alloc;
  std::string pe_snr = "0";
  pe->add_option("--allocation", pe_alloc, "Hyphen-joined rates, e.g. 2-2-2")->required();
  pe->add_option("--snr-db", pe_snr, "SNR in dB")->capture_default_str();
  pe->add_option("--out", out_path, "Output file (default stdout)");
  design_opts.Register(pe, true);

  // mc
  auto* mc = app.add_subcommand("mc", "Monte-Carlo MAP error probability (CSV)");
  std::string mc_alloc;
  std::string mc_snr = "0";
  McConfig mc_cfg;
  mc->add_option("--allocation", mc_alloc, "Hyphen-joined rates")->required();
  mc->add_option("--snr-db", mc_snr, "SNR in dB")->capture_default_str();
  mc->add_option("-T,--snapshots", mc_cfg.snapshots, "Observations per sensor")
      ->check(CLI::Range(1, 1000000))
      ->capture_default_str();
  mc->add_option("--trials", mc_cfg.trials, "Monte-Carlo trials")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40))
      ->capture_default_str();
  mc->add_option("--mc-seed", mc_cfg.seed, "Monte-Carlo RNG seed")->capture_default_str();
  mc->add_option("--out", out_path, "Output file (default stdout)");
  design_opts.Register(mc, true);

  // exponent
  auto* exponent = app.add_subcommand("exponent", "Empirical error exponents -(1/T) log P_E (CSV)");
  std::string exp_alloc;
  std::string exp_snr = "0";
  std::string exp_ts = "1,2,4,8";
  std::int64_t exp_trials = 1000000;
  std::uint64_t exp_seed = 1;
  exponent->add_option("--allocation", exp_alloc, "Hyphen-joined rates")->required();
  exponent->add_option("--snr-db", exp_snr, "SNR in dB")->capture_default_str();
  exponent->add_option("--T", exp_ts, "Comma-separated snapshot counts")->capture_default_str();
  exponent->add_option("--trials", exp_trials, "Trials per T")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40))
      ->capture_default_str();
  exponent->add_option("--mc-seed", exp_seed, "Monte-Carlo RNG seed")->capture_default_str();
  exponent->add_option("--out", out_path, "Output file (default stdout)");
  design_opts.Register(exponent, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*design) {
      const double snr = ParseSnr(design_snr);
      const auto designer = design_opts.MakeDesigner();
      const ObservationModel model = model_from_snr_db(snr);
      Output out(out_path);
      const DesignResult d = designer->Design(design_rate, model);
      nlohmann::json j = d;
      j["method"] = design_opts.method;
      j["snr_db"] = snr;
      out.stream() << j.dump(2) << '\n';
      out.Finish();
    } else if (*fig2) {
      const auto snrs = ParseSnrList(fig2_snrs);
      const auto [lo, hi] = ParseRateRange(fig2_rates);
      if (lo != 0) throw UsageError("fig2 rates must start at 0");
      Output out(out_path);
      WriteFig2Csv(out.stream(), Fig2(snrs, hi));
      out.Finish();
      WriteGnuplot(gnuplot_path, "fig2", out_path);
    } else if (*fig3) {
      const double snr = ParseSnr(fig3_snr);
      const auto [lo, hi] = ParseRateRange(fig3_rates);
      if (lo != 0) throw UsageError("fig3 rates must start at 0");
      design_opts.cfg.Validate();
      Output out(out_path);
      WriteFig3Csv(out.stream(), Fig3(snr, hi, design_opts.cfg));
      out.Finish();
      WriteGnuplot(gnuplot_path, "fig3", out_path);
    } else if (*fig4) {
      const auto snrs = ParseSnrList(fig4_snrs);
      std::vector<RateAllocation> allocs;
      for (const auto& a : Split(fig4_allocs, ',')) allocs.push_back(ParseAllocation(a));
      design_opts.cfg.Validate();
      Output out(out_path);
      WriteFig4Csv(out.stream(), Fig4(snrs, allocs, design_opts.cfg));
      out.Finish();
      WriteGnuplot(gnuplot_path, "fig4", out_path);
    } else if (*allocate) {
      const double snr = ParseSnr(alloc_snr);
      const auto designer = design_opts.MakeDesigner();
      const ObservationModel model = model_from_snr_db(snr);
      Output out(out_path);
      const AllocationSearch result = best_allocation(alloc_n, alloc_r, model, *designer);
      WriteRankedCsv(out.stream(), result.ranked);
      out.Finish();
      std::cerr << "best allocation: " << result.best.allocation.ToString()
                << " (network Chernoff " << csv::FormatDouble(result.best.network.value)
                << " nats)";
      if (alloc_r % alloc_n != 0) {
        std::cerr << " [R not divisible by N: outside the uniform-optimality hypothesis]";
      }
      std::cerr << '\n';
    } else if (*concavity) {
      const auto snrs = ParseSnrList(conc_snrs);
      const auto [lo, hi] = ParseRateRange(conc_rates);
      if (lo != 0) throw UsageError("concavity rates must start at 0");
      if (hi < 2) throw UsageError("concavity needs at least rates 0..2");
      if (concavity->count("--eta") == 0) design_opts.cfg.eta = 1e-6;
      const auto designer = design_opts.MakeDesigner();
      Output out(out_path);
      const auto rows = ConcavityCheck(*designer, snrs, hi, conc_slack);
      WriteConcavityCsv(out.stream(), rows);
      out.Finish();
      bool all = true;
      for (const auto& r : rows) {
        if (!r.report.concave) {
          all = false;
          std::cerr << "not concave at " << csv::FormatDouble(r.snr_db) << " dB, rates:";
          for (auto k : r.report.violations) std::cerr << ' ' << r.curve.rates[k];
          std::cerr << '\n';
        }
      }
      return all ? 0 : 1;
    } else if (*pe) {
      const RateAllocation alloc = ParseAllocation(pe_alloc);
      const double snr = ParseSnr(pe_snr);
      const auto designer = design_opts.MakeDesigner();
      const ObservationModel model = model_from_snr_db(snr);
      Output out(out_path);
      const NetworkConfig net{DesignNetwork(alloc, model, *designer), model, {}};
      WriteExactCsv(out.stream(), {{snr, alloc.ToString(), exact_map_error(net)}});
      out.Finish();
    } else if (*mc) {
      const RateAllocation alloc = ParseAllocation(mc_alloc);
      const double snr = ParseSnr(mc_snr);
      const auto designer = design_opts.MakeDesigner();
      const ObservationModel model = model_from_snr_db(snr);
      Output out(out_path);
      const NetworkConfig net{DesignNetwork(alloc, model, *designer), model, {}};
      WriteMcCsv(out.stream(), {{snr, alloc.ToString(), mc_cfg.snapshots,
                                 monte_carlo_error(net, mc_cfg)}});
      out.Finish();
    } else if (*exponent) {
      const RateAllocation alloc = ParseAllocation(exp_alloc);
      const double snr = ParseSnr(exp_snr);
      const auto ts = ParsePositiveList(exp_ts, "snapshot count");
      const auto designer = design_opts.MakeDesigner();
      const ObservationModel model = model_from_snr_db(snr);
      Output out(out_path);
      const NetworkConfig net{DesignNetwork(alloc, model, *designer), model, {}};
      std::vector<SensorPmfPair> pmfs;
      for (const auto& q : net.quantizers) pmfs.push_back(conditional_pmf(q, model));
      const double c = network_chernoff(pmfs).value;
      csv::Table table{{"T", "exponent", "estimate", "std_err", "lower_bound", "network_chernoff"}, {}};
      for (const auto& p : exponent_estimate(net, ts, exp_trials, exp_seed)) {
        table.rows.push_back({std::to_string(p.snapshots), csv::FormatDouble(p.exponent),
                              csv::FormatDouble(p.estimate.estimate),
                              csv::FormatDouble(p.estimate.std_err), p.lower_bound ? "1" : "0",
                              csv::FormatDouble(c)});
      }
      csv::WriteTable(out.stream(), table);
      out.Finish();
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
