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

#include "doctest.h"
#include "fairot/empirical.hpp"
#include "fairot/error.hpp"
#include "test_util.hpp"

namespace fairot {
namespace {

TEST_CASE("empirical_from_samples sorts and weights uniformly") {
  const std::vector<double> s{3, 1, 2};
  const auto d = empirical_from_samples(s);
  CHECK(d.values() == std::vector<double>{1, 2, 3});
  for (double w : d.weights()) CHECK(w == doctest::Approx(1.0 / 3.0));

  const std::vector<double> one{5};
  CHECK(empirical_from_samples(one).weights() == std::vector<double>{1.0});
  const std::vector<double> ties{1, 1, 2};
  CHECK(empirical_from_samples(ties).values() == std::vector<double>{1, 1, 2});
  CHECK_THROWS_AS(empirical_from_samples(std::vector<double>{}), ValidationError);
}

TEST_CASE("quantile follows Hazen positions with flat tails") {
  const std::vector<double> s{0, 10};
  const auto d = empirical_from_samples(s);
  // Ranks 0.25 and 0.75; 0.5 is the linear midpoint.
  CHECK(quantile(d, 0.5) == 5.0);
  CHECK(quantile(d, 0.25) == 0.0);
  CHECK(quantile(d, 0.0) == 0.0);
  CHECK(quantile(d, 1.0) == 10.0);
  CHECK_THROWS_AS(quantile(d, -0.1), ValidationError);
  CHECK_THROWS_AS(quantile(d, 1.5), ValidationError);
}

TEST_CASE("cdf_rank returns midranks") {
  CHECK(cdf_rank(empirical_from_samples(std::vector<double>{1, 2, 3}), 2) == 0.5);
  // Ranks 2 and 3 average to 2.5 -> (2.5 - 0.5) / 4.
  CHECK(cdf_rank(empirical_from_samples(std::vector<double>{1, 2, 2, 3}), 2) == 0.5);
  CHECK(cdf_rank(empirical_from_samples(std::vector<double>{7}), 7) == 0.5);
  CHECK_THROWS_AS(cdf_rank(empirical_from_samples(std::vector<double>{1, 2}), 1.5),
                  ValidationError);
  CHECK(cdf_rank(empirical_from_samples(std::vector<double>{1, 2}), 1.5,
                 RankContext::interpolate) == 0.5);
}

TEST_CASE("midranks agree with cdf_rank") {
  PortableRng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = testing::random_scores(rng, 1 + rng.below(60), 0.3);
    const auto ranks = midranks(s);
    const auto d = empirical_from_samples(s);
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(ranks[i] == cdf_rank(d, s[i]));
  }
}

TEST_CASE("discretize_quantiles") {
  const auto d = empirical_from_samples(std::vector<double>{0, 10});
  CHECK(discretize_quantiles(d, 2).quantiles == std::vector<double>{0, 10});
  // Ranks 0.125 / 0.375 / 0.625 / 0.875 against positions 0.25 / 0.75.
  const auto g4 = discretize_quantiles(d, 4);
  CHECK(g4.quantiles[0] == 0.0);
  CHECK(g4.quantiles[1] == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(g4.quantiles[2] == doctest::Approx(7.5).epsilon(1e-15));
  CHECK(g4.quantiles[3] == 10.0);
  const auto c = discretize_quantiles(empirical_from_samples(std::vector<double>(9, 0.3)), 17);
  CHECK(std::all_of(c.quantiles.begin(), c.quantiles.end(), [](double q) { return q == 0.3; }));
  CHECK_THROWS_AS(discretize_quantiles(d, 1), ValidationError);
}

TEST_CASE("property: quantile is nondecreasing in p") {
  PortableRng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = empirical_from_samples(testing::random_scores(rng, 1 + rng.below(40)));
    double a = rng.uniform01(), b = rng.uniform01();
    if (a > b) std::swap(a, b);
    CHECK(quantile(d, a) <= quantile(d, b));
  }
}

TEST_CASE("property: quantile(cdf_rank(x)) == x for unique samples") {
  PortableRng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    auto s = testing::random_scores(rng, 1 + rng.below(50), 0.0);
    const auto d = empirical_from_samples(s);
    for (double x : s) {
      if (std::count(s.begin(), s.end(), x) == 1) CHECK(quantile(d, cdf_rank(d, x)) == x);
    }
  }
}

TEST_CASE("property: affine equivariance of quantiles") {
  PortableRng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = testing::random_scores(rng, 2 + rng.below(30));
    const double a = 0.1 + 3.0 * rng.uniform01();
    const double b = rng.uniform01() * 10.0 - 5.0;
    std::vector<double> t;
    for (double x : s) t.push_back(a * x + b);
    const auto ds = empirical_from_samples(s);
    const auto dt = empirical_from_samples(t);
    for (int k = 0; k < 10; ++k) {
      const double p = rng.uniform01();
      CHECK(quantile(dt, p) == doctest::Approx(a * quantile(ds, p) + b).epsilon(1e-12));
    }
  }
}

TEST_CASE("weighted distributions use cumulative-weight positions") {
  const EmpiricalDistribution d({0.0, 1.0}, {0.25, 0.75});
  CHECK(d.positions()[0] == 0.125);
  CHECK(d.positions()[1] == 0.625);
  CHECK(cdf_rank(d, 1.0) == 0.625);
  CHECK_THROWS_AS(EmpiricalDistribution({1.0, 0.0}, {0.5, 0.5}), ValidationError);
  CHECK_THROWS_AS(EmpiricalDistribution({0.0, 1.0}, {0.5, 0.6}), ValidationError);
  CHECK_THROWS_AS(EmpiricalDistribution({0.0, 1.0}, {1.0, 0.0}), ValidationError);
}

TEST_CASE("large uniform distributions pass the weight-sum invariant") {
  std::vector<double> s(300001);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<double>(i);
  CHECK_NOTHROW(empirical_from_samples(s));
}

}  // namespace
}  // namespace fairot
