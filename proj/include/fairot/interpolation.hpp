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

#ifndef FAIROT_INTERPOLATION_HPP_
#define FAIROT_INTERPOLATION_HPP_

#include <map>
#include <variant>
#include <vector>

#include "fairot/kernels.hpp"
#include "fairot/measure.hpp"
#include "fairot/population.hpp"
#include "fairot/transport1d.hpp"

namespace fairot {

// Interpolation degree per group: 0 keeps raw scores, 1 moves a group onto
// the barycenter. All values lie in [0, 1].
class ThetaPolicy {
 public:
  explicit ThetaPolicy(double default_theta = 0.0,
                       std::map<GroupKey, double> overrides = {});

  double default_theta() const { return default_theta_; }
  const std::map<GroupKey, double>& overrides() const { return overrides_; }

 private:
  double default_theta_;
  std::map<GroupKey, double> overrides_;
};

double resolve_theta(const ThetaPolicy& policy, const GroupKey& group);

// Throws ValidationError if an override names a group absent from `pop`.
void check_overrides(const ThetaPolicy& policy, const ScoredPopulation& pop);

// Transformed scores, index-aligned with the population records.
struct FairScores {
  std::size_t dimension = 1;
  // Row major, size() x dimension.
  std::vector<double> values;
  ThetaPolicy theta_used;
  std::variant<Barycenter1D, DiscreteMeasure> barycenter;

  std::size_t size() const { return values.size() / dimension; }
  double scalar(std::size_t i) const { return values[i * dimension]; }
  std::span<const double> point(std::size_t i) const {
    return {values.data() + i * dimension, dimension};
  }
};

// fair_i = (1 - theta_g) s_i + theta_g Q_B(p_i), p_i the in-group midrank
// of s_i. One-dimensional populations only.
FairScores interpolate_scores(const ScoredPopulation& pop,
                              const Barycenter1D& bary,
                              const ThetaPolicy& policy,
                              kernels::Backend backend = kernels::default_backend());

}  // namespace fairot

#endif  // FAIROT_INTERPOLATION_HPP_
