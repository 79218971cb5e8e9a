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

#include "fairot/measure.hpp"

#include <cmath>
#include <numeric>

#include "fairot/empirical.hpp"
#include "fairot/error.hpp"

namespace fairot {

void validate_measure(const DiscreteMeasure& m) {
  if (m.dimension == 0) throw ValidationError("measure dimension must be positive");
  if (m.masses.empty()) throw ValidationError("measure has empty support");
  if (m.support.size() != m.masses.size() * m.dimension) {
    throw ValidationError("measure support and masses differ in length");
  }
  for (double v : m.support) {
    if (!std::isfinite(v)) throw ValidationError("measure support is not finite");
  }
  for (double w : m.masses) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw ValidationError("measure masses must be positive");
    }
  }
  const double total = compensated_sum(m.masses);
  if (std::abs(total - 1.0) > 1e-9) {
    throw ValidationError("measure masses must sum to 1");
  }
}

DiscreteMeasure uniform_measure(std::vector<double> points, std::size_t dimension) {
  if (dimension == 0 || points.empty() || points.size() % dimension != 0) {
    throw ValidationError("point list does not match the dimension");
  }
  const std::size_t n = points.size() / dimension;
  return {dimension, std::move(points),
          std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

std::vector<double> squared_cost(const DiscreteMeasure& a,
                                 const DiscreteMeasure& b) {
  if (a.dimension != b.dimension) {
    throw ValidationError("measures differ in dimension");
  }
  const std::size_t d = a.dimension;
  std::vector<double> cost(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double diff = a.support[i * d + k] - b.support[j * d + k];
        acc += diff * diff;
      }
      cost[i * b.size() + j] = acc;
    }
  }
  return cost;
}

double plan_cost(const TransportPlan& plan, const DiscreteMeasure& a,
                 const DiscreteMeasure& b) {
  const auto cost = squared_cost(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < cost.size(); ++i) acc += plan.matrix[i] * cost[i];
  return acc;
}

}  // namespace fairot
