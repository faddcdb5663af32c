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


#ifndef RATEALLOC_DESIGN_HPP_
#define RATEALLOC_DESIGN_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

#include "ratealloc/chernoff.hpp"
#include "ratealloc/observation_model.hpp"
#include "ratealloc/quantizer.hpp"

namespace ratealloc {

/// Compander design for antipodal Gaussian observations: uniform quantization
/// of G(x / sqrt(3)) on [0, 1], i.e. b_i = sqrt(3) G^{-1}(i / 2^r). The
/// boundaries do not depend on the signal amplitude.
Quantizer design_bb(int rate);

/// High-rate approximation m^2/2 - log(1 + (pi sqrt(3) m^2 / 4) 2^{-2r}) of
/// the compander's Chernoff information. Only meaningful for large rates: it
/// goes negative at r = 0.
double bb_asymptotic_chernoff(int rate, double m);

struct DesignerConfig {
  double eta = 1e-4;                 // stop when a full sweep gains less than this
  int restarts = 16;
  std::uint64_t seed = 0x5EED;
  int grid_points = 64;              // coarse scan per boundary before golden refinement
  int max_iters = 10000;

  void Validate() const;
  bool operator==(const DesignerConfig&) const = default;
};

struct DesignResult {
  Quantizer quantizer;
  double chernoff = 0.0;             // max over alpha of the final design
  double alpha_star = 0.5;
  int restart = 0;                   // index of the winning start
  int iterations = 0;                // full sweeps used by the winning start
  std::vector<double> objective_trace;  // C(gamma, alpha) after each sweep
};

// Quantizer fields plus "chernoff", "alpha_star", "restart" and "iterations".
// The objective trace is not persisted.
void to_json(nlohmann::json& j, const DesignResult& d);
void from_json(const nlohmann::json& j, DesignResult& d);

/// Coordinate ascent on C(gamma, alpha). Each start draws 2^r - 1 boundaries
/// uniformly in [-m-5, m+5] and sorts them. A sweep re-optimizes b_1 .. b_{K-1}
/// in turn over [b_{i-1}, b_{i+1}] (coarse grid, then golden section), then
/// alpha over [0, 1]; a move is kept only if it raises the objective. Sweeps
/// stop once the gain drops below eta. The best of cfg.restarts starts wins,
/// ties going to the lowest start index.
DesignResult design_numerical(int rate, const ObservationModel& model,
                              const DesignerConfig& cfg = {});

enum class DesignMethod { kBb, kNumerical };

std::string ToString(DesignMethod method);
/// Accepts "bb" and "numerical"; throws std::invalid_argument otherwise.
DesignMethod ParseDesignMethod(const std::string& text);

/// A sensor design method: maps (rate, model) to a decision rule.
/// Designs are memoized; the cache is safe to share between threads.
class SensorDesigner {
 public:
  explicit SensorDesigner(DesignMethod method, DesignerConfig cfg = {});

  DesignMethod method() const { return method_; }
  const DesignerConfig& config() const { return cfg_; }

  /// Quantizer plus its exact Chernoff information under `model`.
  DesignResult Design(int rate, const ObservationModel& model) const;

  /// Persists designs as JSON files under `dir` and reuses them on later
  /// runs. Files are keyed by method, rate, amplitude and configuration.
  void SetCacheDirectory(std::filesystem::path dir);

  std::filesystem::path CacheFile(int rate, const ObservationModel& model) const;

 private:
  using Key = std::tuple<int, double>;

  DesignMethod method_;
  DesignerConfig cfg_;
  mutable std::shared_mutex mutex_;
  mutable std::map<Key, DesignResult> cache_;
  std::filesystem::path cache_dir_;
};

}  // namespace ratealloc

#endif  // RATEALLOC_DESIGN_HPP_
