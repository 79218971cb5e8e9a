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

#ifndef FAIROT_SYNTH_HPP_
#define FAIROT_SYNTH_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "fairot/population.hpp"

namespace fairot {

struct ScoreDistribution {
  enum class Kind { gaussian, beta, uniform };
  Kind kind = Kind::gaussian;
  // gaussian: (mean, sd); beta: (a, b); uniform: (lo, hi).
  double p1 = 0.0;
  double p2 = 1.0;

  static ScoreDistribution gaussian(double mean, double sd) { return {Kind::gaussian, mean, sd}; }
  static ScoreDistribution beta(double a, double b) { return {Kind::beta, a, b}; }
  static ScoreDistribution uniform(double lo, double hi) { return {Kind::uniform, lo, hi}; }

  // Parses "gaussian(0.4,0.1)", "beta(2,5)" or "uniform(0,1)".
  static ScoreDistribution parse(const std::string& text);
  std::string describe() const;
};

struct GroupSpec {
  GroupKey key;
  std::size_t size = 0;
  // One distribution per score dimension.
  std::vector<ScoreDistribution> dims;

  // Parses "A:1000:gaussian(0.4,0.1)[;gaussian(...)]"; the key may be an
  // intersectional label such as "female|groupB".
  static GroupSpec parse(const std::string& text);
};

// Records ordered by spec order, then draw index; ids are
// "<group label>-<index>". Each group draws from its own stream keyed by
// (seed, group label).
std::vector<ScoreRecord> generate_synthetic(const std::vector<GroupSpec>& specs,
                                            std::uint64_t seed);

// Two groups A ~ N(0.4, 0.1) and B ~ N(0.6, 0.1), `size` each.
std::vector<GroupSpec> two_gaussian_scenario(std::size_t size = 1000);

}  // namespace fairot

#endif  // FAIROT_SYNTH_HPP_
