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


#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ratealloc/chernoff.hpp"
#include "ratealloc/design.hpp"
#include "ratealloc/detection.hpp"
#include "ratealloc/errors.hpp"

using namespace ratealloc;

namespace {

constexpr double kGMinus1 = 0.15865525393145705141;  // G(-1), mpmath

NetworkConfig Network(std::vector<Quantizer> qs, double m) {
  NetworkConfig c;
  c.quantizers = std::move(qs);
  c.model = ObservationModel(m);
  return c;
}

double NetworkChernoff(const NetworkConfig& c) {
  std::vector<SensorPmfPair> pmfs;
  for (const auto& q : c.quantizers) pmfs.push_back(conditional_pmf(q, c.model));
  return network_chernoff(pmfs).value;
}

}  // namespace

TEST_CASE("exact_map_error examples") {
  CHECK(exact_map_error(Network({Quantizer(1, {0.0})}, 1.0)) ==
        doctest::Approx(kGMinus1).epsilon(1e-14));
  CHECK(exact_map_error(Network({Quantizer()}, 1.0)) == doctest::Approx(0.5).epsilon(1e-15));
  // Two identical binary sensors: a split vote is a coin flip, so the
  // error equals that of one sensor.
  CHECK(exact_map_error(Network({Quantizer(1, {0.0}), Quantizer(1, {0.0})}, 1.0)) ==
        doctest::Approx(kGMinus1).epsilon(1e-13));
  // Three sensors vote: error = P(at least two wrong).
  const double p = kGMinus1;
  CHECK(exact_map_error(Network(std::vector<Quantizer>(3, Quantizer(1, {0.0})), 1.0)) ==
        doctest::Approx(3 * p * p * (1 - p) + p * p * p).epsilon(1e-13));
  // T snapshots of one sensor equal T copies of it.
  CHECK(exact_map_error(Network({Quantizer(1, {0.0})}, 1.0), 3) ==
        doctest::Approx(3 * p * p * (1 - p) + p * p * p).epsilon(1e-13));
}

TEST_CASE("exact_map_error with unequal priors") {
  NetworkConfig c = Network({Quantizer()}, 1.0);
  c.priors = {0.8, 0.2};
  CHECK(exact_map_error(c) == doctest::Approx(0.2).epsilon(1e-15));
  c.priors = {0.8, 0.3};
  CHECK_THROWS_AS(exact_map_error(c), std::domain_error);
}

TEST_CASE("exact_map_error capacity and validation") {
  CHECK_THROWS_AS(exact_map_error(Network({}, 1.0)), std::domain_error);
  CHECK_THROWS_AS(exact_map_error(Network({design_bb(13), design_bb(12)}, 1.0)), CapacityError);
  CHECK_THROWS_AS(exact_map_error(Network({design_bb(5)}, 1.0), 5), CapacityError);
  CHECK_THROWS_AS(exact_map_error(Network({design_bb(1)}, 1.0), 0), std::domain_error);
}

TEST_CASE("exact_map_error invariances") {
  const std::vector<Quantizer> qs{design_bb(1), design_bb(3), Quantizer(2, {-0.7, 0.1, 0.9})};
  const double base = exact_map_error(Network(qs, 0.9));
  CHECK(exact_map_error(Network({qs[2], qs[0], qs[1]}, 0.9)) == doctest::Approx(base).epsilon(1e-13));
  CHECK(exact_map_error(Network({qs[1], qs[2], qs[0]}, 0.9)) == doctest::Approx(base).epsilon(1e-13));
  CHECK(base <= 0.5);

  // Adding an informative sensor never hurts.
  double prev = 0.5;
  std::vector<Quantizer> growing;
  for (const Quantizer& q : {design_bb(2), design_bb(1), Quantizer(1, {0.4}), design_bb(3)}) {
    growing.push_back(q);
    const double pe = exact_map_error(Network(growing, 0.7));
    CHECK(pe <= prev + 1e-15);
    prev = pe;
  }
}

TEST_CASE("Chernoff bound at T = 1") {
  for (double m : {0.3, 0.7, 1.0, 1.6}) {
    for (const auto& qs : std::vector<std::vector<Quantizer>>{
             {design_bb(1)},
             {design_bb(2), design_bb(2)},
             {design_bb(3), design_bb(1), design_bb(1)},
             {Quantizer(2, {-1.0, 0.2, 0.5}), design_bb(4)},
             std::vector<Quantizer>(6, design_bb(2))}) {
      const auto c = Network(qs, m);
      REQUIRE(exact_map_error(c) <= std::exp(-NetworkChernoff(c)) + 1e-15);
    }
  }
}

TEST_CASE("monte_carlo_error") {
  const auto single = Network({Quantizer(1, {0.0})}, 1.0);
  SUBCASE("close to the exact value") {
    const auto est = monte_carlo_error(single, {1, 400000, 3});
    CHECK(est.trials == 400000);
    CHECK(std::abs(est.estimate - kGMinus1) <= 4 * est.std_err);
  }
  SUBCASE("deterministic given the seed") {
    const auto a = monte_carlo_error(single, {2, 50000, 9});
    const auto b = monte_carlo_error(single, {2, 50000, 9});
    CHECK(a.errors == b.errors);
    CHECK(a.estimate == b.estimate);
    const auto c = monte_carlo_error(single, {2, 50000, 10});
    CHECK(a.errors != c.errors);
  }
  SUBCASE("vanishing signal") {
    const auto est = monte_carlo_error(Network({design_bb(2)}, 1e-6), {1, 100000, 1});
    CHECK(std::abs(est.estimate - 0.5) <= 4 * est.std_err);
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(monte_carlo_error(single, {0, 10, 1}), std::domain_error);
    CHECK_THROWS_AS(monte_carlo_error(single, {1, 0, 1}), std::domain_error);
  }
}

TEST_CASE("monte_carlo_error covers the exact value for most seeds") {
  const auto c = Network({design_bb(1), design_bb(2)}, 0.8);
  const double exact = exact_map_error(c);
  int covered = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto est = monte_carlo_error(c, {1, 20000, seed});
    if (std::abs(est.estimate - exact) <= 4 * est.std_err) ++covered;
  }
  CHECK(covered >= 99);
}

TEST_CASE("exponent_estimate") {
  const auto single = Network({Quantizer(1, {0.0})}, 1.0);
  const auto pts = exponent_estimate(single, {1, 2, 4, 8}, 200000, 5);
  REQUIRE(pts.size() == 4);
  // At T = 1 the exponent is -log G(-1).
  CHECK(pts[0].exponent == doctest::Approx(-std::log(kGMinus1)).epsilon(0.02));
  for (std::size_t i = 1; i < pts.size(); ++i) {
    CHECK(pts[i].exponent < pts[i - 1].exponent);
    CHECK(pts[i].exponent > 0.313741);
  }
  const auto flat = exponent_estimate(Network({design_bb(2)}, 1e-6), {1, 2}, 100000, 1);
  // P_E stays near 1/2, so the exponent is log(2) / T.
  for (const auto& p : flat) CHECK(p.exponent == doctest::Approx(std::log(2.0) / p.snapshots).epsilon(0.02));

  // No errors observed: reported as a bound.
  const auto strong = exponent_estimate(Network({design_bb(3)}, 8.0), {1}, 1000, 1);
  CHECK(strong[0].lower_bound);
  CHECK(strong[0].exponent == doctest::Approx(std::log(1000.0)).epsilon(1e-12));
}

TEST_CASE("detection CSV") {
  std::ostringstream exact;
  WriteExactCsv(exact, {{0.0, "1", 0.1}});
  CHECK(exact.str() == "snr_db,allocation,pe,log10_pe\n0,1,0.1,-1\n");
  std::ostringstream mc;
  WriteMcCsv(mc, {{0.0, "1-1", 2, {0.25, 0.01, 25, 100}}});
  CHECK(mc.str() == "snr_db,allocation,T,estimate,std_err\n0,1-1,2,0.25,0.01\n");
}
