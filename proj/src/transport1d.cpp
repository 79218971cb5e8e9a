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

#include "fairot/transport1d.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "fairot/error.hpp"

namespace fairot {

double w2_squared(const QuantileGrid& a, const QuantileGrid& b) {
  if (a.size() != b.size()) {
    throw ValidationError("quantile grids differ in size");
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a.quantiles[k] - b.quantiles[k];
    acc += d * d;
  }
  return acc / static_cast<double>(a.size());
}

double w2_distance(const QuantileGrid& a, const QuantileGrid& b) {
  return std::sqrt(w2_squared(a, b));
}

double w2_distance(const EmpiricalDistribution& a,
                   const EmpiricalDistribution& b, std::size_t m) {
  return w2_distance(discretize_quantiles(a, m), discretize_quantiles(b, m));
}

Barycenter1D barycenter_1d(std::span<const EmpiricalDistribution> dists,
                           std::span<const double> weights, std::size_t m,
                           kernels::Backend backend) {
  if (dists.empty()) {
    throw ValidationError("barycenter needs at least one distribution");
  }
  if (dists.size() != weights.size()) {
    throw ValidationError("barycenter distributions and weights differ in length");
  }
  if (m < 2) throw ValidationError("quantile grid size must be at least 2");
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw ValidationError("barycenter weights must be positive");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "barycenter weights sum to " << total << ", expected 1";
    throw ValidationError(msg.str());
  }

  Barycenter1D bary;
  bary.weights.reserve(weights.size());
  for (double w : weights) bary.weights.push_back(w / total);

  std::vector<double> rows;
  rows.reserve(dists.size() * m);
  for (const auto& d : dists) {
    const auto grid = discretize_quantiles(d, m);
    rows.insert(rows.end(), grid.quantiles.begin(), grid.quantiles.end());
  }
  bary.grid.ranks = hazen_ranks(m);
  bary.grid.quantiles.resize(m);
  kernels::weighted_row_sum(rows, bary.weights, bary.grid.quantiles, backend);
  return bary;
}

std::vector<double> barycenter_weights(const ScoredPopulation& pop,
                                       BarycenterWeighting weighting,
                                       std::span<const double> explicit_weights) {
  const std::size_t groups = pop.group_count();
  std::vector<double> weights(groups);
  switch (weighting) {
    case BarycenterWeighting::size_proportional:
      for (std::size_t g = 0; g < groups; ++g) {
        weights[g] = static_cast<double>(pop.members(g).size()) /
                     static_cast<double>(pop.size());
      }
      break;
    case BarycenterWeighting::uniform:
      for (auto& w : weights) w = 1.0 / static_cast<double>(groups);
      break;
    case BarycenterWeighting::explicit_weights:
      if (explicit_weights.size() != groups) {
        throw ValidationError("explicit barycenter weights must name every group");
      }
      weights.assign(explicit_weights.begin(), explicit_weights.end());
      break;
  }
  return weights;
}

Barycenter1D fit_barycenter(const ScoredPopulation& pop,
                            BarycenterWeighting weighting, std::size_t m,
                            std::span<const double> explicit_weights,
                            kernels::Backend backend) {
  if (pop.dimension() != 1) {
    throw ValidationError(
        "one-dimensional barycenter requested for a multi-dimensional "
        "population; use the n-D transport path");
  }
  const std::size_t groups = pop.group_count();
  std::vector<EmpiricalDistribution> dists;
  dists.reserve(groups);
  for (std::size_t g = 0; g < groups; ++g) {
    dists.push_back(empirical_from_samples(pop.group_scalars(g)));
  }

  const auto weights = barycenter_weights(pop, weighting, explicit_weights);
  auto bary = barycenter_1d(dists, weights, m, backend);
  bary.groups = pop.group_keys();
  return bary;
}

double ot_map_1d(const EmpiricalDistribution& source,
                 const QuantileGrid& target, double s,
                 std::optional<double> rank_hint) {
  const double p = rank_hint ? *rank_hint : cdf_rank(source, s);
  return quantile(target, p);
}

}  // namespace fairot
