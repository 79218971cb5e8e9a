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
#include <map>

#include "doctest.h"
#include "fairot/error.hpp"
#include "fairot/interpolation.hpp"
#include "fairot/metrics.hpp"
#include "test_util.hpp"

namespace fairot {
namespace {

// A = [0, 1], B = [10, 11] with the equal-weight barycenter [5, 6] (m = 2).
struct Split {
  ScoredPopulation pop = testing::scalar_population({{0, 1}, {10, 11}}, {"A", "B"});
  Barycenter1D bary = fit_barycenter(pop, BarycenterWeighting::uniform, 2);
  FairScores at(double theta) const { return interpolate_scores(pop, bary, ThetaPolicy(theta)); }
};

TEST_CASE("individual fairness examples") {
  const Split s;
  CHECK(s.bary.grid.quantiles == std::vector<double>{5, 6});
  CHECK(individual_fairness_error(s.pop, s.at(0)) == 0.0);
  CHECK(individual_fairness_error(s.pop, s.at(1)) == 0.25);
  CHECK(individual_fairness_error_bruteforce(s.pop, s.at(1)) == 0.25);

  const auto single = testing::scalar_population({{1, 2, 3}});
  const auto fair = interpolate_scores(single, fit_barycenter(single, BarycenterWeighting::uniform, 10),
                                       ThetaPolicy(1.0));
  CHECK(individual_fairness_error(single, fair) == 0.0);
}

TEST_CASE("individual fairness rejects misaligned scores") {
  const Split s;
  auto fair = s.at(1);
  fair.values.pop_back();
  CHECK_THROWS_AS(individual_fairness_error(s.pop, fair), ValidationError);
  CHECK_THROWS_AS(utility_loss(s.pop, fair), ValidationError);
}

TEST_CASE("count_strict_inversions") {
  CHECK(count_strict_inversions(std::vector<double>{}) == 0);
  CHECK(count_strict_inversions(std::vector<double>{3, 2, 1}) == 3);
  CHECK(count_strict_inversions(std::vector<double>{1, 1, 1}) == 0);
  CHECK(count_strict_inversions(std::vector<double>{2, 1, 2, 1}) == 3);
}

TEST_CASE("property: fast individual fairness matches enumeration") {
  PortableRng rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t groups = 1 + rng.below(4);
    std::vector<std::vector<double>> data;
    std::map<GroupKey, double> overrides;
    for (std::size_t g = 0; g < groups; ++g) {
      data.push_back(testing::random_scores(rng, 1 + rng.below(40), 0.3));
      overrides[GroupKey{{"G" + std::to_string(g)}}] = rng.uniform01() < 0.2 ? 1.0 : rng.uniform01();
    }
    const auto pop = testing::scalar_population(data);
    const auto bary = fit_barycenter(pop, BarycenterWeighting::size_proportional, 2 + rng.below(50));
    const auto fair = interpolate_scores(pop, bary, ThetaPolicy(0.0, overrides));
    CHECK(individual_fairness_error(pop, fair) == individual_fairness_error_bruteforce(pop, fair));
  }
}

TEST_CASE("group fairness examples") {
  const Split s;
  CHECK(group_fairness_error(s.pop, s.at(0), 2).w2 == doctest::Approx(10.0));
  CHECK(group_fairness_error(s.pop, s.at(0.5), 2).w2 == doctest::Approx(5.0));
  const auto parity = group_fairness_error(s.pop, s.at(1), 2);
  CHECK(parity.w2 <= 1e-9);
  CHECK(parity.ks == 0.0);
  CHECK(group_fairness_error(s.pop, s.at(0), 2).ks == 1.0);
  const auto single = testing::scalar_population({{1, 2, 3}});
  const auto fair = interpolate_scores(single, fit_barycenter(single, BarycenterWeighting::uniform, 4),
                                       ThetaPolicy(0.0));
  CHECK_THROWS_AS(group_fairness_error(single, fair, 4), ValidationError);
}

TEST_CASE("ks statistic") {
  CHECK(ks_statistic(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}) == 0.0);
  CHECK(ks_statistic(std::vector<double>{0, 1}, std::vector<double>{5, 6}) == 1.0);
  CHECK(ks_statistic(std::vector<double>{0, 2}, std::vector<double>{1, 3}) == 0.5);
  CHECK(ks_statistic(std::vector<double>{1, 1, 2}, std::vector<double>{1, 2, 2}) ==
        doctest::Approx(1.0 / 3.0));
}

TEST_CASE("property: ks matches a direct sweep of candidate points") {
  PortableRng rng(72);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = testing::random_scores(rng, 1 + rng.below(30), 0.3);
    const auto b = testing::random_scores(rng, 1 + rng.below(30), 0.3);
    double best = 0;
    auto ecdf = [](const std::vector<double>& v, double x) {
      return static_cast<double>(std::count_if(v.begin(), v.end(), [x](double y) { return y <= x; })) /
             static_cast<double>(v.size());
    };
    for (const auto* v : {&a, &b}) {
      for (double x : *v) best = std::max(best, std::abs(ecdf(a, x) - ecdf(b, x)));
    }
    CHECK(ks_statistic(a, b) == doctest::Approx(best).epsilon(1e-15));
  }
}

TEST_CASE("utility loss examples") {
  const Split s;
  const auto zero = utility_loss(s.pop, s.at(0));
  CHECK(zero.mean_abs == 0.0);
  CHECK(zero.w2 == 0.0);
  CHECK(utility_loss(s.pop, s.at(1)).mean_abs == 5.0);
  CHECK(utility_loss(s.pop, s.at(1)).w2 == 5.0);
  CHECK(utility_loss(s.pop, s.at(0.5)).mean_abs == 2.5);
}

TEST_CASE("selection rate examples") {
  const Split s;
  const auto raw = selection_rates(s.pop, s.at(0), SelectionRule::at_threshold(5));
  CHECK(raw.rates == std::vector<double>{0.0, 1.0});
  CHECK(raw.ratio == 0.0);
  const auto parity = selection_rates(s.pop, s.at(1), SelectionRule::at_threshold(5.5));
  CHECK(parity.rates == std::vector<double>{0.5, 0.5});
  CHECK(parity.ratio == 1.0);
  const auto all = selection_rates(s.pop, s.at(0), SelectionRule::at_threshold(-100));
  CHECK(all.rates == std::vector<double>{1.0, 1.0});
  CHECK(all.ratio == 1.0);
  const auto none = selection_rates(s.pop, s.at(0), SelectionRule::at_threshold(100));
  CHECK(none.ratio == 1.0);
}

TEST_CASE("top-k selection breaks ties by raw score then id") {
  const Split s;
  // At theta = 1 fair scores are A=(5,6), B=(5,6); top-1 ties at 6 and the
  // higher raw score (B: 11) wins.
  const auto top1 = selection_rates(s.pop, s.at(1), SelectionRule::top(1));
  CHECK(top1.rates == std::vector<double>{0.0, 0.5});
  const auto top2 = selection_rates(s.pop, s.at(1), SelectionRule::top(2));
  CHECK(top2.rates == std::vector<double>{0.5, 0.5});

  const auto same = build_population({{"x1", {"A"}, {1}}, {"x2", {"B"}, {1}}}, 1);
  const auto fair = interpolate_scores(same, fit_barycenter(same, BarycenterWeighting::uniform, 2),
                                       ThetaPolicy(0.0));
  const auto pick = selection_rates(same, fair, SelectionRule::top(1));
  CHECK(pick.rates == std::vector<double>{0.0, 1.0});

  CHECK_THROWS_AS(selection_rates(s.pop, s.at(1), SelectionRule::top(0)), ValidationError);
  CHECK_THROWS_AS(selection_rates(s.pop, s.at(1), SelectionRule::top(5)), ValidationError);
}

TEST_CASE("build_report bundles the metrics") {
  const Split s;
  const auto report = build_report(s.pop, s.at(0.5), 2, SelectionRule::at_threshold(5));
  REQUIRE(report.individual_fairness_error.has_value());
  REQUIRE(report.group_fairness.has_value());
  CHECK(report.group_fairness->w2 == doctest::Approx(5.0));
  CHECK(report.utility.mean_abs == 2.5);
  REQUIRE(report.selection.has_value());
  CHECK(report.theta.default_theta() == 0.5);
  CHECK(report.grid_size == 2);

  const auto single = testing::scalar_population({{1, 2, 3}});
  const auto fair = interpolate_scores(single, fit_barycenter(single, BarycenterWeighting::uniform, 4),
                                       ThetaPolicy(0.0));
  CHECK_FALSE(build_report(single, fair, 4, std::nullopt).group_fairness.has_value());
}

TEST_CASE("sweep tradeoff on a two-gaussian sample") {
  PortableRng rng(73);
  std::vector<double> a, b;
  for (int i = 0; i < 500; ++i) {
    a.push_back(0.4 + 0.1 * rng.normal());
    b.push_back(0.6 + 0.1 * rng.normal());
  }
  const auto pop = testing::scalar_population({a, b});
  const auto bary = fit_barycenter(pop, BarycenterWeighting::size_proportional, 1000);
  double prev_w2 = INFINITY, prev_ife = -1;
  for (int t = 0; t <= 10; ++t) {
    const auto fair = interpolate_scores(pop, bary, ThetaPolicy(t / 10.0));
    const double w2 = group_fairness_error(pop, fair, 1000).w2;
    const double ife = individual_fairness_error(pop, fair);
    if (t == 0) CHECK(ife == 0.0);
    CHECK(w2 < prev_w2);
    CHECK(ife >= prev_ife);
    prev_w2 = w2;
    prev_ife = ife;
  }
}

}  // namespace
}  // namespace fairot
