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

#include "fairot/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fairot/error.hpp"

namespace fairot {
namespace {

double interpolate_positions(std::span<const double> positions,
                             std::span<const double> values, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << "quantile rank " << p << " outside [0, 1]";
    throw ValidationError(msg.str());
  }
  if (p <= positions.front()) return values.front();
  if (p >= positions.back()) return values.back();
  const auto it = std::upper_bound(positions.begin(), positions.end(), p);
  const auto hi = static_cast<std::size_t>(it - positions.begin());
  const auto lo = hi - 1;
  if (positions[lo] == p) return values[lo];
  const double t = (p - positions[lo]) / (positions[hi] - positions[lo]);
  return std::lerp(values[lo], values[hi], t);
}

}  // namespace

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> sorted_values,
                                             std::vector<double> weights)
    : values_(std::move(sorted_values)), weights_(std::move(weights)) {
  if (values_.empty()) {
    throw ValidationError("empirical distribution needs at least one sample");
  }
  if (values_.size() != weights_.size()) {
    throw ValidationError("values and weights differ in length");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw ValidationError("empirical distribution has a non-finite sample");
    }
    if (i > 0 && values_[i] < values_[i - 1]) {
      throw ValidationError("empirical distribution values must be sorted");
    }
    if (!(weights_[i] > 0.0)) {
      throw ValidationError("empirical distribution weights must be positive");
    }
  }
  const double total = compensated_sum(weights_);
  if (std::abs(total - 1.0) > 1e-12) {
    throw ValidationError("empirical distribution weights must sum to 1");
  }

  const std::size_t n = values_.size();
  uniform_ = std::all_of(weights_.begin(), weights_.end(),
                         [&](double w) { return w == weights_.front(); });
  positions_.resize(n);
  if (uniform_) {
    positions_ = hazen_ranks(n);
  } else {
    double cum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      positions_[i] = cum + 0.5 * weights_[i];
      cum += weights_[i];
    }
  }
}

double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + carry;
}

EmpiricalDistribution empirical_from_samples(std::span<const double> samples) {
  if (samples.empty()) {
    throw ValidationError("cannot build a distribution from zero samples");
  }
  std::vector<double> values(samples.begin(), samples.end());
  std::sort(values.begin(), values.end());
  std::vector<double> weights(values.size(),
                              1.0 / static_cast<double>(values.size()));
  return EmpiricalDistribution(std::move(values), std::move(weights));
}

std::vector<double> hazen_ranks(std::size_t m) {
  std::vector<double> ranks(m);
  const double denom = 2.0 * static_cast<double>(m);
  for (std::size_t k = 0; k < m; ++k) {
    ranks[k] = static_cast<double>(2 * k + 1) / denom;
  }
  return ranks;
}

double quantile(const EmpiricalDistribution& dist, double p) {
  return interpolate_positions(dist.positions(), dist.values(), p);
}

double quantile(const QuantileGrid& grid, double p) {
  if (grid.ranks.empty()) throw ValidationError("empty quantile grid");
  return interpolate_positions(grid.ranks, grid.quantiles, p);
}

double cdf_rank(const EmpiricalDistribution& dist, double x,
                RankContext context) {
  const auto& v = dist.values();
  const auto first = std::lower_bound(v.begin(), v.end(), x);
  const auto last = std::upper_bound(v.begin(), v.end(), x);
  const auto lo = static_cast<std::size_t>(first - v.begin());
  const auto hi = static_cast<std::size_t>(last - v.begin());
  if (lo < hi) {
    if (dist.uniform()) {
      // Average of (i + 0.5) / n over the tie block [lo, hi).
      return static_cast<double>(lo + hi) /
             (2.0 * static_cast<double>(dist.size()));
    }
    const auto& w = dist.weights();
    const double before = std::accumulate(w.begin(), w.begin() + lo, 0.0);
    const double block = std::accumulate(w.begin() + lo, w.begin() + hi, 0.0);
    return before + 0.5 * block;
  }
  if (context == RankContext::in_sample) {
    std::ostringstream msg;
    msg << "value " << x << " is not a sample of the distribution";
    throw ValidationError(msg.str());
  }
  if (lo == 0) return cdf_rank(dist, v.front());
  if (lo == v.size()) return cdf_rank(dist, v.back());
  const double r_lo = cdf_rank(dist, v[lo - 1]);
  const double r_hi = cdf_rank(dist, v[lo]);
  const double t = (x - v[lo - 1]) / (v[lo] - v[lo - 1]);
  return std::lerp(r_lo, r_hi, t);
}

std::vector<double> midranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> out(n);
  const double denom = 2.0 * static_cast<double>(n);
  std::size_t lo = 0;
  while (lo < n) {
    std::size_t hi = lo + 1;
    while (hi < n && values[order[hi]] == values[order[lo]]) ++hi;
    const double rank = static_cast<double>(lo + hi) / denom;
    for (std::size_t k = lo; k < hi; ++k) out[order[k]] = rank;
    lo = hi;
  }
  return out;
}

QuantileGrid discretize_quantiles(const EmpiricalDistribution& dist,
                                  std::size_t m) {
  if (m < 2) throw ValidationError("quantile grid size must be at least 2");
  QuantileGrid grid;
  grid.ranks = hazen_ranks(m);
  grid.quantiles.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    grid.quantiles[k] = quantile(dist, grid.ranks[k]);
  }
  return grid;
}

}  // namespace fairot
