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


#include "ratealloc/design.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "ratealloc/numerics.hpp"
#include "ratealloc/parallel.hpp"
#include "ratealloc/random.hpp"

namespace ratealloc {

Quantizer design_bb(int rate) {
  const std::size_t k = CellCount(rate);
  std::vector<double> b(k - 1);
  const double sqrt3 = std::numbers::sqrt3;
  for (std::size_t i = 1; i < k; ++i) {
    b[i - 1] = sqrt3 * std_normal_inv_cdf(static_cast<double>(i) / static_cast<double>(k));
  }
  // Exact antisymmetry keeps the two pmfs exact mirror images.
  for (std::size_t i = 0; i < b.size() / 2; ++i) b[b.size() - 1 - i] = -b[i];
  if (!b.empty() && b.size() % 2 == 1) b[b.size() / 2] = 0.0;
  return Quantizer(rate, std::move(b));
}

double bb_asymptotic_chernoff(int rate, double m) {
  if (rate < 0) throw std::domain_error("rate must be nonnegative");
  if (!(m > 0.0) || !std::isfinite(m)) throw std::domain_error("m must be finite and > 0");
  const double m2 = m * m;
  const double c = std::numbers::pi * std::numbers::sqrt3 * m2 / 4.0;
  return 0.5 * m2 - std::log1p(c * std::exp2(-2.0 * rate));
}

void DesignerConfig::Validate() const {
  if (!(eta > 0.0)) throw std::domain_error("eta must be > 0");
  if (restarts < 1) throw std::domain_error("restarts must be >= 1");
  if (grid_points < 2) throw std::domain_error("grid_points must be >= 2");
  if (max_iters < 1) throw std::domain_error("max_iters must be >= 1");
}

namespace {

// Boundaries are never moved further than this from the signal means; the
// tail mass beyond is below 1e-23 under either hypothesis.
constexpr double kOuterMargin = 10.0;

double CellTerm(double a, double b, double alpha) {
  if (a > 0.0 && b > 0.0) return b * std::exp(alpha * std::log(a / b));
  if (a > 0.0) return alpha == 1.0 ? a : 0.0;
  if (b > 0.0) return alpha == 0.0 ? b : 0.0;
  return 0.0;
}

// Standard normal cdf and upper tail at z = x - mean; the smaller of the two
// comes straight from erfc so tail cells keep full relative precision.
struct EdgeCdf {
  double z = 0.0;
  double lower = 0.0;
  double upper = 1.0;
};

EdgeCdf MakeEdge(double z) {
  if (z == -INFINITY) return {z, 0.0, 1.0};
  if (z == INFINITY) return {z, 1.0, 0.0};
  if (z < 0.0) {
    const double lower = 0.5 * std::erfc(-z / std::numbers::sqrt2);
    return {z, lower, 1.0 - lower};
  }
  const double upper = 0.5 * std::erfc(z / std::numbers::sqrt2);
  return {z, 1.0 - upper, upper};
}

// Same branch structure as normal_interval_probability.
double Interval(const EdgeCdf& lo, const EdgeCdf& hi) {
  if (!(lo.z < hi.z)) return 0.0;
  if (lo.z >= 0.0) return lo.upper - hi.upper;
  if (hi.z <= 0.0) return hi.lower - lo.lower;
  return 1.0 - lo.lower - hi.upper;
}

class CoordinateAscent {
 public:
  CoordinateAscent(int rate, const ObservationModel& model, const DesignerConfig& cfg,
                   std::vector<double> boundaries)
      : rate_(rate), model_(model), cfg_(cfg), b_(std::move(boundaries)) {
    const double m = model.amplitude();
    outer_lo_ = -m - kOuterMargin;
    outer_hi_ = m + kOuterMargin;
    edges_.resize(b_.size() + 2);
    edges_.front() = {MakeEdge(-INFINITY), MakeEdge(-INFINITY)};
    edges_.back() = {MakeEdge(INFINITY), MakeEdge(INFINITY)};
    for (std::size_t j = 0; j < b_.size(); ++j) edges_[j + 1] = EdgesAt(b_[j]);
    pmfs_.p0.resize(b_.size() + 1);
    pmfs_.p1.resize(b_.size() + 1);
    terms_.resize(b_.size() + 1);
    for (std::size_t u = 0; u < pmfs_.size(); ++u) RefreshCell(u);
  }

  DesignResult Run() {
    DesignResult out;
    double objective = chernoff_at_alpha(pmfs_, alpha_);
    for (int iter = 0; iter < cfg_.max_iters; ++iter) {
      const double before = objective;
      RefreshTerms();
      for (std::size_t i = 0; i < b_.size(); ++i) UpdateBoundary(i);
      objective = UpdateAlpha(std::max(before, chernoff_at_alpha(pmfs_, alpha_)));
      if (objective < before) {
        throw std::logic_error("coordinate ascent objective decreased");
      }
      out.objective_trace.push_back(objective);
      out.iterations = iter + 1;
      if (objective - before < cfg_.eta) break;
    }
    out.quantizer = Quantizer(rate_, b_);
    const ChernoffResult best = chernoff_information(conditional_pmf(out.quantizer, model_));
    out.chernoff = best.value;
    out.alpha_star = best.alpha_star;
    return out;
  }

 private:
  struct EdgePair {
    EdgeCdf h0;
    EdgeCdf h1;
  };

  EdgePair EdgesAt(double x) const {
    return {MakeEdge(x - model_.Mean(Hypothesis::kH0)), MakeEdge(x - model_.Mean(Hypothesis::kH1))};
  }

  // Cell u spans edges_[u] .. edges_[u + 1].
  void RefreshCell(std::size_t u) {
    pmfs_.p0[u] = Interval(edges_[u].h0, edges_[u + 1].h0);
    pmfs_.p1[u] = Interval(edges_[u].h1, edges_[u + 1].h1);
  }

  void RefreshTerms() {
    total_ = 0.0;
    for (std::size_t u = 0; u < terms_.size(); ++u) {
      terms_[u] = CellTerm(pmfs_.p0[u], pmfs_.p1[u], alpha_);
      total_ += terms_[u];
    }
  }

  // Moves b_i, which separates cells i and i + 1, within its neighbours.
  void UpdateBoundary(std::size_t i) {
    const double lo = i == 0 ? std::min(outer_lo_, b_[i]) : b_[i - 1];
    const double hi = i + 1 == b_.size() ? std::max(outer_hi_, b_[i]) : b_[i + 1];
    if (!(lo < hi)) return;

    const double rest = total_ - terms_[i] - terms_[i + 1];
    const EdgePair& left = edges_[i];
    const EdgePair& right = edges_[i + 2];
    // Affinity sum with b_i at x; smaller is better.
    const auto affinity_at = [&](double x) {
      const EdgePair mid = EdgesAt(x);
      return rest + CellTerm(Interval(left.h0, mid.h0), Interval(left.h1, mid.h1), alpha_) +
             CellTerm(Interval(mid.h0, right.h0), Interval(mid.h1, right.h1), alpha_);
    };
    // -log is decreasing, so maximizing -affinity maximizes C(gamma, alpha).
    const auto score_at = [&](double x) { return -affinity_at(x); };

    const int n = cfg_.grid_points;
    const double step = (hi - lo) / (n - 1);
    int best_k = 0;
    double best_f = -INFINITY;
    for (int k = 0; k < n; ++k) {
      const double f = score_at(k == n - 1 ? hi : lo + k * step);
      if (f > best_f) {
        best_f = f;
        best_k = k;
      }
    }
    Maximum refined{best_k == n - 1 ? hi : lo + best_k * step, best_f};
    const double a = lo + std::max(best_k - 1, 0) * step;
    const double c = std::min(hi, lo + (best_k + 1) * step);
    if (a < c) {
      const Maximum m = maximize_concave_1d(score_at, a, c, kBoundaryTol);
      if (m.value > refined.value) refined = m;
    }
    if (refined.value > score_at(b_[i])) {
      b_[i] = refined.argmax;
      edges_[i + 1] = EdgesAt(b_[i]);
      RefreshCell(i);
      RefreshCell(i + 1);
      terms_[i] = CellTerm(pmfs_.p0[i], pmfs_.p1[i], alpha_);
      terms_[i + 1] = CellTerm(pmfs_.p0[i + 1], pmfs_.p1[i + 1], alpha_);
      total_ = rest + terms_[i] + terms_[i + 1];
    }
  }

  double UpdateAlpha(double current) {
    const Maximum m = maximize_concave_1d(
        [&](double alpha) { return chernoff_at_alpha(pmfs_, alpha); }, 0.0, 1.0);
    if (m.value > current) {
      alpha_ = m.argmax;
      return m.value;
    }
    return current;
  }

  static constexpr double kBoundaryTol = 1e-9;

  int rate_;
  const ObservationModel& model_;
  const DesignerConfig& cfg_;
  std::vector<double> b_;
  std::vector<EdgePair> edges_;  // b_{-1} = -inf, b_0 .. b_{K-2}, +inf
  SensorPmfPair pmfs_;
  std::vector<double> terms_;
  double total_ = 0.0;
  double alpha_ = 0.5;
  double outer_lo_ = 0.0;
  double outer_hi_ = 0.0;
};

}  // namespace

DesignResult design_numerical(int rate, const ObservationModel& model,
                              const DesignerConfig& cfg) {
  cfg.Validate();
  const std::size_t k = CellCount(rate);
  if (k == 1) return DesignResult{};

  const double m = model.amplitude();
  std::vector<DesignResult> starts(static_cast<std::size_t>(cfg.restarts));
  ParallelFor(starts.size(), [&](std::size_t s) {
    Xoshiro256ss rng = Xoshiro256ss::ForStream(cfg.seed, s);
    std::vector<double> b(k - 1);
    for (double& x : b) x = rng.Uniform(-m - 5.0, m + 5.0);
    std::sort(b.begin(), b.end());
    starts[s] = CoordinateAscent(rate, model, cfg, std::move(b)).Run();
    starts[s].restart = static_cast<int>(s);
  });

  std::size_t best = 0;
  for (std::size_t s = 1; s < starts.size(); ++s) {
    if (starts[s].chernoff > starts[best].chernoff) best = s;
  }
  return std::move(starts[best]);
}

std::string ToString(DesignMethod method) {
  return method == DesignMethod::kBb ? "bb" : "numerical";
}

DesignMethod ParseDesignMethod(const std::string& text) {
  if (text == "bb") return DesignMethod::kBb;
  if (text == "numerical") return DesignMethod::kNumerical;
  throw std::invalid_argument("unknown design method '" + text + "' (expected bb|numerical)");
}

SensorDesigner::SensorDesigner(DesignMethod method, DesignerConfig cfg)
    : method_(method), cfg_(cfg) {
  cfg_.Validate();
}

void to_json(nlohmann::json& j, const DesignResult& d) {
  j = d.quantizer;
  j["chernoff"] = d.chernoff;
  j["alpha_star"] = d.alpha_star;
  j["restart"] = d.restart;
  j["iterations"] = d.iterations;
}

void from_json(const nlohmann::json& j, DesignResult& d) {
  d.quantizer = j.get<Quantizer>();
  d.chernoff = j.at("chernoff").get<double>();
  d.alpha_star = j.at("alpha_star").get<double>();
  d.restart = j.value("restart", 0);
  d.iterations = j.value("iterations", 0);
  d.objective_trace.clear();
}

void SensorDesigner::SetCacheDirectory(std::filesystem::path dir) {
  std::unique_lock lock(mutex_);
  cache_dir_ = std::move(dir);
}

std::filesystem::path SensorDesigner::CacheFile(int rate, const ObservationModel& model) const {
  // Hex floats keep the key exact.
  char name[256];
  if (method_ == DesignMethod::kBb) {
    std::snprintf(name, sizeof name, "bb-r%d-m%a.json", rate, model.amplitude());
  } else {
    std::snprintf(name, sizeof name, "numerical-r%d-m%a-eta%a-s%d-g%d-i%d-seed%llu.json", rate,
                  model.amplitude(), cfg_.eta, cfg_.restarts, cfg_.grid_points, cfg_.max_iters,
                  static_cast<unsigned long long>(cfg_.seed));
  }
  return cache_dir_ / name;
}

DesignResult SensorDesigner::Design(int rate, const ObservationModel& model) const {
  const Key key{rate, model.amplitude()};
  std::filesystem::path file;
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    if (!cache_dir_.empty()) file = CacheFile(rate, model);
  }
  DesignResult result;
  if (!file.empty() && std::filesystem::exists(file)) {
    std::ifstream in(file);
    result = nlohmann::json::parse(in).get<DesignResult>();
    if (result.quantizer.rate() != rate) {
      throw std::runtime_error("design cache file " + file.string() + " holds the wrong rate");
    }
  } else if (method_ == DesignMethod::kBb) {
    result.quantizer = design_bb(rate);
    const ChernoffResult c = chernoff_information(conditional_pmf(result.quantizer, model));
    result.chernoff = c.value;
    result.alpha_star = c.alpha_star;
  } else {
    result = design_numerical(rate, model, cfg_);
  }
  if (!file.empty() && !std::filesystem::exists(file)) {
    std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file);
    out << nlohmann::json(result).dump(2) << '\n';
    if (!out) throw std::runtime_error("cannot write design cache file " + file.string());
  }
  std::unique_lock lock(mutex_);
  return cache_.emplace(key, std::move(result)).first->second;
}

}  // namespace ratealloc
