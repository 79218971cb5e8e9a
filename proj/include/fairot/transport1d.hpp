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

#ifndef FAIROT_TRANSPORT1D_HPP_
#define FAIROT_TRANSPORT1D_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fairot/empirical.hpp"
#include "fairot/kernels.hpp"
#include "fairot/population.hpp"

namespace fairot {

// Closed-form W2 barycenter of one-dimensional distributions on a shared
// rank grid. `groups` is empty when the barycenter was fitted from
// anonymous distributions; otherwise it is index-aligned with `weights`.
struct Barycenter1D {
  QuantileGrid grid;
  std::vector<GroupKey> groups;
  std::vector<double> weights;
};

enum class BarycenterWeighting { size_proportional, uniform, explicit_weights };

// Grid W2 distance: sqrt(mean_k (Q_a(p_k) - Q_b(p_k))^2).
double w2_distance(const EmpiricalDistribution& a,
                   const EmpiricalDistribution& b, std::size_t m);
double w2_distance(const QuantileGrid& a, const QuantileGrid& b);
// Squared variant, used where roots would be taken and undone.
double w2_squared(const QuantileGrid& a, const QuantileGrid& b);

// grid[k] = sum_g w_g Q_g(p_k). Weights must be positive and sum to one
// within 1e-9; they are renormalized.
Barycenter1D barycenter_1d(std::span<const EmpiricalDistribution> dists,
                           std::span<const double> weights, std::size_t m,
                           kernels::Backend backend = kernels::default_backend());

// Per-group weights in group order. Size-proportional weights are
// n_g / n; explicit weights are passed through unchecked.
std::vector<double> barycenter_weights(const ScoredPopulation& pop,
                                       BarycenterWeighting weighting,
                                       std::span<const double> explicit_weights = {});

// Barycenter of the groups of a one-dimensional population. `explicit_weights`
// is consulted only for BarycenterWeighting::explicit_weights and must carry
// one weight per group in group order.
Barycenter1D fit_barycenter(const ScoredPopulation& pop,
                            BarycenterWeighting weighting, std::size_t m,
                            std::span<const double> explicit_weights = {},
                            kernels::Backend backend = kernels::default_backend());

// Monotone transport map T(s) = Q_target(F_source(s)). Without a rank hint
// `s` must be a sample of `source`.
double ot_map_1d(const EmpiricalDistribution& source,
                 const QuantileGrid& target, double s,
                 std::optional<double> rank_hint = std::nullopt);

}  // namespace fairot

#endif  // FAIROT_TRANSPORT1D_HPP_
