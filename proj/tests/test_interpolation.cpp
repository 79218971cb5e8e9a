// Copyright 2026 The fairot Authors.
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

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>

#include "doctest.h"
#include "fairot/error.hpp"
#include "fairot/interpolation.hpp"
#include "fairot/metrics.hpp"
#include "test_util.hpp"

namespace fairot {
namespace {

const GroupKey kA{{"A"}};
const GroupKey kB{{"B"}};

ScoredPopulation fixture() { return testing::scalar_population({{0, 2}, {2, 4}}, {"A", "B"}); }

TEST_CASE("resolve_theta") {
  CHECK(resolve_theta(ThetaPolicy(0.8), kA) == 0.8);
  CHECK(resolve_theta(ThetaPolicy(0.8, {{kB, 1.0}}), kB) == 1.0);
  CHECK(resolve_theta(ThetaPolicy(0.0, {{kA, 0.3}}), GroupKey{{"C"}}) == 0.0);
  CHECK_THROWS_AS(ThetaPolicy(1.5), ValidationError);
  CHECK_THROWS_AS(ThetaPolicy(0.5, {{kA, -0.1}}), ValidationError);
  CHECK_THROWS_AS(ThetaPolicy(std::nan("")), ValidationError);
}

TEST_CASE("four-row fixture") {
  const auto pop = fixture();
  const auto bary = fit_barycenter(pop, BarycenterWeighting::uniform, 2);
  CHECK(bary.grid.quantiles == std::vector<double>{1, 3});
  CHECK(interpolate_scores(pop, bary, ThetaPolicy(1.0)).values == std::vector<double>{1, 3, 1, 3});
  CHECK(interpolate_scores(pop, bary, ThetaPolicy(0.5)).values ==
        std::vector<double>{0.5, 2.5, 1.5, 3.5});
  CHECK(interpolate_scores(pop, bary, ThetaPolicy(0.0)).values == std::vector<double>{0, 2, 2, 4});
}

TEST_CASE("interpolate_scores validates its inputs") {
  const auto pop = fixture();
  const auto bary = fit_barycenter(pop, BarycenterWeighting::uniform, 2);
  CHECK_THROWS_AS(interpolate_scores(pop, bary, ThetaPolicy(0.5, {{GroupKey{{"Z"}}, 1.0}})),
                  ValidationError);
  auto broken = bary;
  broken.grid.quantiles = {3, 1};
  CHECK_THROWS_AS(interpolate_scores(pop, broken, ThetaPolicy(0.5)), ValidationError);

  const auto nd = build_population({{"a", {"A"}, {1, 2}}, {"b", {"B"}, {3, 4}}}, 1);
  try {
    interpolate_scores(nd, bary, ThetaPolicy(0.5));
    FAIL("expected a routing error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("interpolate_scores_nd") != std::string::npos);
  }
}

TEST_CASE("theta zero is the bitwise identity") {
  PortableRng rng(51);
  const auto pop = testing::scalar_population(
      {testing::random_scores(rng, 300), testing::random_scores(rng, 170)});
  const auto bary = fit_barycenter(pop, BarycenterWeighting::size_proportional, 1000);
  const auto fair = interpolate_scores(pop, bary, ThetaPolicy(0.0));
  for (std::size_t i = 0; i < pop.size(); ++i) {
    CHECK(std::memcmp(&fair.values[i], &pop.flat_scores()[i], sizeof(double)) == 0);
  }
}

TEST_CASE("property: within-group monotonicity and tie equality") {
  PortableRng rng(52);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t groups = 2 + rng.below(3);
    std::vector<std::vector<double>> data;
    std::map<GroupKey, double> overrides;
    for (std::size_t g = 0; g < groups; ++g) {
      data.push_back(testing::random_scores(rng, 1 + rng.below(200), 0.3));
      overrides[GroupKey{{"G" + std::to_string(g)}}] = rng.uniform01();
    }
    const auto pop = testing::scalar_population(data);
    const auto bary = fit_barycenter(pop, BarycenterWeighting::size_proportional, 1 + 2 + rng.below(500));
    const auto fair = interpolate_scores(pop, bary, ThetaPolicy(0.0, overrides));
    for (std::size_t g = 0; g < groups; ++g) {
      const auto& idx = pop.members(g);
      for (std::size_t a : idx) {
        for (std::size_t b : idx) {
          if (pop.scalar(a) <= pop.scalar(b)) CHECK(fair.scalar(a) <= fair.scalar(b));
          if (pop.scalar(a) == pop.scalar(b)) CHECK(fair.scalar(a) == fair.scalar(b));
        }
      }
    }
  }
}

TEST_CASE("property: linear parity decay and linear utility loss") {
  PortableRng rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 5 + rng.below(200);
    // Exact decay needs both groups sampled at the same ranks: equal sizes
    // and no ties.
    const auto pop = testing::scalar_population(
        {testing::random_scores(rng, n, 0.0), testing::random_scores(rng, n, 0.0)});
    const std::size_t m = 2 + rng.below(400);
    const auto bary = fit_barycenter(pop, BarycenterWeighting::uniform, m);
    const double raw = group_fairness_error(pop, interpolate_scores(pop, bary, ThetaPolicy(0.0)), m).w2;
    const auto full = utility_loss(pop, interpolate_scores(pop, bary, ThetaPolicy(1.0)));
    for (double theta : {0.25, 0.5, 0.75}) {
      const auto fair = interpolate_scores(pop, bary, ThetaPolicy(theta));
      CHECK(std::abs(group_fairness_error(pop, fair, m).w2 - (1 - theta) * raw) <= 1e-9);
      const auto loss = utility_loss(pop, fair);
      CHECK(std::abs(loss.mean_abs - theta * full.mean_abs) <= 1e-9);
      CHECK(std::abs(loss.w2 - theta * full.w2) <= 1e-9);
    }
  }
}

TEST_CASE("property: one group at theta one lands on the barycenter grid") {
  PortableRng rng(54);
  for (int trial = 0; trial < 30; ++trial) {
    const auto pop = testing::scalar_population(
        {testing::random_scores(rng, 200 + rng.below(400), 0.0),
         testing::random_scores(rng, 200 + rng.below(400), 0.0),
         testing::random_scores(rng, 200 + rng.below(400), 0.0)});
    const std::size_t m = 200;
    const auto bary = fit_barycenter(pop, BarycenterWeighting::size_proportional, m);
    const GroupKey target{{"G1"}};
    const auto fair = interpolate_scores(
        pop, bary, ThetaPolicy(rng.uniform01(), {{GroupKey{{"G0"}}, rng.uniform01()}, {target, 1.0}}));
    std::vector<double> mapped;
    for (std::size_t i : pop.members(1)) mapped.push_back(fair.scalar(i));
    const auto grid = discretize_quantiles(empirical_from_samples(mapped), m);
    double spacing = 0;
    for (std::size_t k = 1; k < m; ++k) {
      spacing = std::max(spacing, bary.grid.quantiles[k] - bary.grid.quantiles[k - 1]);
    }
    const double tol = 2 * spacing;
    for (std::size_t k = 0; k < m; ++k) {
      CHECK(std::abs(grid.quantiles[k] - bary.grid.quantiles[k]) <= tol);
    }
    for (std::size_t i : pop.members(1)) {
      CHECK(fair.scalar(i) >= bary.grid.quantiles.front());
      CHECK(fair.scalar(i) <= bary.grid.quantiles.back());
    }
  }
}

TEST_CASE("property: affine equivariance of the transform") {
  PortableRng rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = testing::random_scores(rng, 3 + rng.below(50));
    const auto b = testing::random_scores(rng, 3 + rng.below(50));
    const double scale = 0.5 + 2 * rng.uniform01();
    const double shift = 3 * rng.uniform01() - 1;
    auto ta = a, tb = b;
    for (double& x : ta) x = scale * x + shift;
    for (double& x : tb) x = scale * x + shift;
    const auto pop = testing::scalar_population({a, b});
    const auto tpop = testing::scalar_population({ta, tb});
    const ThetaPolicy policy(rng.uniform01());
    const auto fair = interpolate_scores(pop, fit_barycenter(pop, BarycenterWeighting::size_proportional, 64), policy);
    const auto tfair = interpolate_scores(tpop, fit_barycenter(tpop, BarycenterWeighting::size_proportional, 64), policy);
    for (std::size_t i = 0; i < pop.size(); ++i) {
      CHECK(tfair.scalar(i) == doctest::Approx(scale * fair.scalar(i) + shift).epsilon(1e-9));
    }
  }
}

TEST_CASE("fair scores carry the policy and barycenter") {
  const auto pop = fixture();
  const auto bary = fit_barycenter(pop, BarycenterWeighting::uniform, 2);
  const auto fair = interpolate_scores(pop, bary, ThetaPolicy(0.5, {{kB, 1.0}}));
  CHECK(fair.size() == 4);
  CHECK(fair.theta_used.default_theta() == 0.5);
  CHECK(std::get<Barycenter1D>(fair.barycenter).grid.quantiles == bary.grid.quantiles);
  CHECK(fair.values == std::vector<double>{0.5, 2.5, 1, 3});
}

}  // namespace
}  // namespace fairot
