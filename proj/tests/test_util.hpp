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

#ifndef FAIROT_TESTS_TEST_UTIL_HPP_
#define FAIROT_TESTS_TEST_UTIL_HPP_

#include <cmath>
#include <string>
#include <vector>

#include "fairot/population.hpp"
#include "fairot/random.hpp"

namespace fairot::testing {

// Records for groups with the given scalar scores; group k is named
// "G<k>" and ids are "<group>-<index>".
inline std::vector<ScoreRecord> scalar_records(
    const std::vector<std::vector<double>>& groups,
    const std::vector<std::string>& names = {}) {
  std::vector<ScoreRecord> out;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const std::string name = names.empty() ? "G" + std::to_string(g) : names[g];
    for (std::size_t i = 0; i < groups[g].size(); ++i) {
      out.push_back({name + "-" + std::to_string(i), {name}, {groups[g][i]}});
    }
  }
  return out;
}

inline ScoredPopulation scalar_population(
    const std::vector<std::vector<double>>& groups,
    const std::vector<std::string>& names = {}) {
  return build_population(scalar_records(groups, names), 1);
}

// Random scores; with probability `tie_rate` a value repeats an earlier one.
inline std::vector<double> random_scores(PortableRng& rng, std::size_t n,
                                         double tie_rate = 0.1) {
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!out.empty() && rng.uniform01() < tie_rate) {
      out.push_back(out[rng.below(out.size())]);
    } else {
      out.push_back(std::round((rng.uniform01() * 4.0 - 1.0) * 1e6) / 1e6);
    }
  }
  return out;
}

}  // namespace fairot::testing

#endif  // FAIROT_TESTS_TEST_UTIL_HPP_
