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


#ifndef RATEALLOC_OBSERVATION_MODEL_HPP_
#define RATEALLOC_OBSERVATION_MODEL_HPP_

#include "ratealloc/random.hpp"

namespace ratealloc {

enum class Hypothesis { kH0 = 0, kH1 = 1 };

/// Signal-to-noise ratio E = m^2, carried in decibels of energy.
struct Snr {
  double db = 0.0;

  /// Amplitude m with 10 log10(m^2) = db, i.e. m = 10^(db / 20).
  double Amplitude() const;
};

/// Antipodal signal in unit-variance Gaussian noise:
///   H0: x = -m + v,   H1: x = +m + v,   v ~ N(0, 1).
/// Downstream code only touches the per-hypothesis cdf and the sampler, so
/// another density pair can replace this one behind the same surface.
class ObservationModel {
 public:
  /// Throws std::domain_error unless m is finite and positive.
  explicit ObservationModel(double m);

  double amplitude() const { return m_; }
  double Mean(Hypothesis h) const { return h == Hypothesis::kH0 ? -m_ : m_; }

  /// P(X < x | h). Accepts x = +-infinity.
  double ConditionalCdf(Hypothesis h, double x) const;

  /// P(lo <= X < hi | h) with tail-accurate evaluation.
  double IntervalProbability(Hypothesis h, double lo, double hi) const;

  double Sample(Hypothesis h, Xoshiro256ss& rng) const {
    return Mean(h) + rng.StandardNormal();
  }

  bool operator==(const ObservationModel&) const = default;

 private:
  double m_;
};

ObservationModel model_from_snr_db(double db);

inline double conditional_cdf(const ObservationModel& model, Hypothesis h, double x) {
  return model.ConditionalCdf(h, x);
}

}  // namespace ratealloc

#endif  // RATEALLOC_OBSERVATION_MODEL_HPP_
