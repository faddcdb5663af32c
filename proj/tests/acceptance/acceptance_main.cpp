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


// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ratealloc/allocation.hpp"
#include "ratealloc/chernoff.hpp"
#include "ratealloc/design.hpp"
#include "ratealloc/detection.hpp"
#include "ratealloc/experiments.hpp"
#include "ratealloc/random.hpp"

namespace {

using namespace ratealloc;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void Require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Num(double v) {
  std::ostringstream s;
  s << std::setprecision(7) << v;
  return s.str();
}

// Criterion 1: compander curve values.
void CompanderValues(Outcome& o) {
  const auto start = Clock::now();
  const std::vector<double> at0{0.313741, 0.437325, 0.481768, 0.495084,
                                0.498723, 0.499675, 0.499918};
  const auto rows = Fig2({0.0, 2.0});
  std::map<std::pair<double, int>, double> value;
  for (const auto& r : rows) value[{r.snr_db, r.rate}] = r.chernoff;
  double worst = 0.0;
  for (int r = 1; r <= 7; ++r) worst = std::max(worst, std::abs(value[{0.0, r}] - at0[r - 1]));
  worst = std::max(worst, std::abs(value[{2.0, 1}] - 0.493321));
  worst = std::max(worst, std::abs(value[{2.0, 7}] - 0.792316));
  const double elapsed = Seconds(start);
  o.Require(worst <= 1e-3, "max error " + Num(worst));
  o.Require(elapsed < 1.0, "runtime");
  o.detail << " max_abs_err=" << Num(worst) << " time=" << Num(elapsed) << "s";
}

// Criterion 2: the raw-observation bound.
void RawBound(Outcome& o) {
  const ObservationModel model(1.0);
  o.Require(chernoff_raw(model) == 0.5, "chernoff_raw(1) != 0.5");
  double top = 0.0;
  for (const auto& r : Fig2({0.0})) top = std::max(top, r.chernoff);
  o.Require(top <= 0.5 + 1e-9, "value above bound");
  o.detail << " max_value=" << Num(top);
}

// Criterion 3: discrete concavity of both design curves.
void Concavity(Outcome& o) {
  const auto start = Clock::now();
  DesignerConfig cfg = FigureDesignerConfig();
  cfg.eta = 1e-6;  // keeps the whole sweep inside the time budget on one core
  const SensorDesigner bb(DesignMethod::kBb);
  const SensorDesigner numerical(DesignMethod::kNumerical, cfg);
  int curves = 0;
  for (const SensorDesigner* d : {&bb, &numerical}) {
    for (const auto& row : ConcavityCheck(*d, DefaultFig2Snrs(), 7, 1e-9)) {
      ++curves;
      o.Require(row.report.concave,
                ToString(d->method()) + " not concave at " + Num(row.snr_db) + " dB");
    }
  }
  const double elapsed = Seconds(start);
  o.Require(elapsed < 120.0, "runtime");
  o.detail << " curves=" << curves << " time=" << Num(elapsed) << "s";
}

// Criterion 4: numerical designer against the compander.
void DesignerQuality(Outcome& o) {
  const ObservationModel model(1.0);
  const SensorDesigner bb(DesignMethod::kBb);
  const SensorDesigner numerical(DesignMethod::kNumerical, FigureDesignerConfig());
  double worst_gap = -INFINITY;
  for (int r = 1; r <= 5; ++r) {
    const double gap = bb.Design(r, model).chernoff - numerical.Design(r, model).chernoff;
    worst_gap = std::max(worst_gap, gap);
  }
  o.Require(worst_gap <= 5e-3, "gap " + Num(worst_gap));
  const auto c1 = numerical.Design(1, model);
  o.Require(std::abs(c1.chernoff - 0.313741) <= 1e-4, "C1 " + Num(c1.chernoff));
  o.Require(std::abs(c1.alpha_star - 0.5) <= 1e-6, "alpha " + Num(c1.alpha_star));
  o.detail << " max(bb-num)=" << Num(worst_gap) << " C1=" << Num(c1.chernoff)
           << " alpha*=" << Num(c1.alpha_star);
}

// Criterion 5: uniform allocation is optimal and reachable by rebalancing.
void UniformOptimal(Outcome& o) {
  const auto start = Clock::now();
  const ObservationModel model(1.0);
  const SensorDesigner bb(DesignMethod::kBb);
  const RateAllocation uniform(std::vector<int>(6, 2));
  const auto search = best_allocation(6, 12, model, bb);
  o.Require(search.best.allocation == uniform, "best is " + search.best.allocation.ToString());
  o.Require(search.ranked.size() > 1 &&
                search.ranked[1].network.value < search.best.network.value,
            "maximizer not unique");
  for (const auto& a : DefaultFig4Allocations()) {
    const auto trace = rebalance_to_uniform(a);
    o.Require(trace.final_allocation == uniform, a.ToString() + " ends elsewhere");
    auto total = [&](const RateAllocation& x) {
      double s = 0.0;
      for (int r : x.rates()) s += bb.Design(r, model).chernoff;
      return s;
    };
    double prev = total(a);
    for (const auto& step : trace.steps) {
      const double next = total(step);
      o.Require(next >= prev - 1e-9, a.ToString() + " trace decreases");
      prev = next;
    }
  }
  const double elapsed = Seconds(start);
  o.Require(elapsed < 30.0, "runtime");
  o.detail << " best=" << search.best.allocation.ToString()
           << " C=" << Num(search.best.network.value) << " runner_up="
           << search.ranked[1].allocation.ToString() << " time=" << Num(elapsed) << "s";
}

struct Fig4Point {
  double snr_db;
  RateAllocation allocation;
  double pe;
  double network_chernoff;
};

// Designs once per SNR and keeps what criteria 6 and 7 both need.
std::vector<Fig4Point> Fig4Points() {
  const auto snrs = DefaultFig4Snrs();
  const auto allocs = DefaultFig4Allocations();
  std::vector<Fig4Point> points;
  const auto rows = Fig4(snrs, allocs);
  for (std::size_t s = 0; s < snrs.size(); ++s) {
    const ObservationModel model = model_from_snr_db(snrs[s]);
    const SensorDesigner designer(DesignMethod::kNumerical, FigureDesignerConfig());
    for (std::size_t a = 0; a < allocs.size(); ++a) {
      std::vector<SensorPmfPair> pmfs;
      for (int r : allocs[a].rates()) pmfs.push_back(conditional_pmf(designer.Design(r, model).quantizer, model));
      points.push_back({snrs[s], allocs[a], rows[s * allocs.size() + a].pe,
                        network_chernoff(pmfs).value});
    }
  }
  return points;
}

// Criterion 6: error probability curves.
void ErrorCurves(Outcome& o, const std::vector<Fig4Point>& points, double elapsed) {
  const std::map<std::string, double> golden{{"4-4-4-0-0-0", -1.375679},
                                             {"3-3-3-3-0-0", -1.605144},
                                             {"5-3-1-1-1-1", -1.780948},
                                             {"3-3-2-2-1-1", -1.894448},
                                             {"2-2-2-2-2-2", -1.952850}};
  double worst = 0.0;
  std::map<double, std::pair<double, std::string>> lowest;
  for (const auto& p : points) {
    const double l = std::log10(p.pe);
    if (p.snr_db == 0.0) worst = std::max(worst, std::abs(l - golden.at(p.allocation.ToString())));
    auto it = lowest.find(p.snr_db);
    if (it == lowest.end() || p.pe < it->second.first) lowest[p.snr_db] = {p.pe, p.allocation.ToString()};
  }
  o.Require(worst <= 0.02, "0 dB error " + Num(worst));
  for (const auto& [snr, best] : lowest) {
    o.Require(best.second == "2-2-2-2-2-2", "uniform not lowest at " + Num(snr) + " dB");
  }
  o.Require(elapsed < 300.0, "runtime");
  o.detail << " max_abs_err_0dB=" << Num(worst) << " snrs=" << lowest.size()
           << " time=" << Num(elapsed) << "s";
}

// Criterion 7: Chernoff bound and Monte Carlo agreement.
void BoundAndSimulation(Outcome& o, const std::vector<Fig4Point>& points) {
  double min_slack = INFINITY;
  for (const auto& p : points) {
    const double slack = std::exp(-p.network_chernoff) - p.pe;
    min_slack = std::min(min_slack, slack);
    o.Require(slack >= 0.0, "bound fails for " + p.allocation.ToString() + " at " + Num(p.snr_db));
  }
  NetworkConfig net;
  net.model = ObservationModel(1.0);
  net.quantizers = {design_bb(1), design_bb(1)};
  const double exact = exact_map_error(net);
  const auto mc = monte_carlo_error(net, {1, 1000000, 1});
  const double z = std::abs(mc.estimate - exact) / mc.std_err;
  o.Require(z <= 4.0, "Monte Carlo off by " + Num(z) + " sigma");
  o.detail << " configs=" << points.size() << " min_slack=" << Num(min_slack)
           << " exact=" << Num(exact) << " mc=" << Num(mc.estimate) << " z=" << Num(z);
}

std::string RunCli(const std::string& args, int& code) {
  const std::string cmd = std::string(RATEALLOC_CLI_PATH) + " " + args + " 2>/dev/null";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    code = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

// Criterion 8: property suites, CLI determinism and the exponent trend.
void Properties(Outcome& o) {
  Xoshiro256ss rng(8);

  int pmf_failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const int rate = static_cast<int>(rng() % 8);
    std::vector<double> b(CellCount(rate) - 1);
    for (double& x : b) x = rng.Uniform(-8.0, 8.0);
    std::sort(b.begin(), b.end());
    const auto p = conditional_pmf(Quantizer(rate, b), ObservationModel(rng.Uniform(0.1, 3.0)));
    try {
      p.Validate(1e-12);
    } catch (const std::exception&) {
      ++pmf_failures;
    }
  }
  o.Require(pmf_failures == 0, "pmf normalization");

  int alpha_failures = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::size_t k = 2 + rng() % 15;
    SensorPmfPair p{std::vector<double>(k), std::vector<double>(k)};
    double s0 = 0.0, s1 = 0.0;
    for (std::size_t u = 0; u < k; ++u) {
      s0 += p.p0[u] = rng.Uniform() + 1e-3;
      s1 += p.p1[u] = rng.Uniform() + 1e-3;
    }
    for (std::size_t u = 0; u < k; ++u) {
      p.p0[u] /= s0;
      p.p1[u] /= s1;
    }
    const double a1 = rng.Uniform(), a2 = rng.Uniform();
    const double c1 = chernoff_at_alpha(p, a1), c2 = chernoff_at_alpha(p, a2);
    if (c1 < 0.0 || c2 < 0.0 || chernoff_at_alpha(p, 0.5 * (a1 + a2)) < 0.5 * (c1 + c2) - 1e-10) {
      ++alpha_failures;
    }
  }
  o.Require(alpha_failures == 0, "alpha concavity or nonnegativity");

  int refine_failures = 0;
  for (int i = 0; i < 100; ++i) {
    const ObservationModel model(rng.Uniform(0.2, 2.5));
    std::vector<double> b(1 + rng() % 12);
    for (double& x : b) x = rng.Uniform(-4.0, 4.0);
    auto value = [&](const std::vector<double>& edges) {
      SensorPmfPair p;
      for (std::size_t u = 0; u <= edges.size(); ++u) {
        const double lo = u == 0 ? -INFINITY : edges[u - 1];
        const double hi = u == edges.size() ? INFINITY : edges[u];
        p.p0.push_back(model.IntervalProbability(Hypothesis::kH0, lo, hi));
        p.p1.push_back(model.IntervalProbability(Hypothesis::kH1, lo, hi));
      }
      return chernoff_information(p).value;
    };
    std::sort(b.begin(), b.end());
    const double before = value(b);
    b.push_back(rng.Uniform(-5.0, 5.0));
    std::sort(b.begin(), b.end());
    if (value(b) < before - 1e-12) ++refine_failures;
  }
  o.Require(refine_failures == 0, "refinement monotonicity");

  const std::vector<std::string> commands{
      "design --rate 3 --snr-db 0 --method numerical --seed 7",
      "design --rate 3 --snr-db 0 --method bb",
      "fig2",
      "fig3 --rates 0..4 --eta 1e-5 --restarts 4",
      "fig4 --snr-db 0 --eta 1e-5 --restarts 4",
      "allocate -n 6 -r 12 --method bb",
      "concavity --method bb",
      "pe --allocation 2-2-2-2-2-2 --method bb",
      "mc --allocation 1-1 --trials 100000 --method bb",
      "exponent --allocation 1 --T 1,2,4 --trials 100000 --method bb",
  };
  int cli_failures = 0;
  for (const auto& c : commands) {
    int code_a = 0, code_b = 0;
    const std::string a = RunCli(c, code_a);
    const std::string b = RunCli(c, code_b);
    if (code_a != 0 || code_b != 0 || a.empty() || a != b) {
      ++cli_failures;
      o.detail << " [cli: " << c << "]";
    }
  }
  o.Require(cli_failures == 0, "CLI determinism");

  NetworkConfig single;
  single.model = ObservationModel(1.0);
  single.quantizers = {design_bb(1)};
  const double c = chernoff_information(conditional_pmf(design_bb(1), single.model)).value;
  const auto pts = exponent_estimate(single, {1, 2, 4, 8}, 1000000, 2);
  bool trend = true;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    trend = trend && std::abs(pts[i].exponent - c) < std::abs(pts[i - 1].exponent - c);
  }
  o.Require(trend, "exponent trend");
  o.detail << " exponents=";
  for (const auto& p : pts) o.detail << Num(p.exponent) << (&p == &pts.back() ? "" : ",");
  o.detail << " C=" << Num(c);
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int id, const std::string& name, const std::function<void(Outcome&)>& body) {
    Outcome o;
    try {
      body(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << name
              << o.detail.str() << std::endl;
  };

  report(1, "compander curve values", CompanderValues);
  report(2, "raw observation bound", RawBound);
  report(3, "discrete concavity", Concavity);
  report(4, "numerical designer quality", DesignerQuality);
  report(5, "uniform allocation optimal", UniformOptimal);

  std::vector<Fig4Point> points;
  double fig4_time = 0.0;
  report(6, "error probability curves", [&](Outcome& o) {
    const auto start = Clock::now();
    points = Fig4Points();
    fig4_time = Seconds(start);
    ErrorCurves(o, points, fig4_time);
  });
  report(7, "Chernoff bound and Monte Carlo", [&](Outcome& o) {
    if (points.empty()) points = Fig4Points();
    BoundAndSimulation(o, points);
  });
  report(8, "property suites", Properties);

  std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " FAILED") << std::endl;
  return failed == 0 ? 0 : 1;
}
