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


#include "ratealloc/observation_model.hpp"

#include <cmath>
#include <stdexcept>

#include "ratealloc/numerics.hpp"

namespace ratealloc {

double Snr::Amplitude() const {
  if (!std::isfinite(db)) throw std::domain_error("SNR must be finite");
  return std::pow(10.0, db / 20.0);
}

ObservationModel::ObservationModel(double m) : m_(m) {
  if (!std::isfinite(m) || !(m > 0.0)) {
    throw std::domain_error("observation model amplitude must be finite and > 0");
  }
}

double ObservationModel::ConditionalCdf(Hypothesis h, double x) const {
  if (std::isnan(x)) throw std::domain_error("ConditionalCdf: NaN");
  if (x == -INFINITY) return 0.0;
  if (x == INFINITY) return 1.0;
  return std_normal_cdf(x - Mean(h));
}

double ObservationModel::IntervalProbability(Hypothesis h, double lo, double hi) const {
  const double mu = Mean(h);
  return normal_interval_probability(lo - mu, hi - mu);
}

ObservationModel model_from_snr_db(double db) { return ObservationModel(Snr{db}.Amplitude()); }

}  // namespace ratealloc
