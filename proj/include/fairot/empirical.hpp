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

#ifndef FAIROT_EMPIRICAL_HPP_
#define FAIROT_EMPIRICAL_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace fairot {

// Sorted samples with positive weights summing to one.
//
// Quantiles use Hazen plotting positions: the i-th order statistic (0-based)
// sits at rank (C_i + C_{i+1}) / 2 where C_i is the cumulative weight before
// it, i.e. (i + 0.5) / n for uniform weights. Between positions the quantile
// function interpolates linearly; outside it is constant.
class EmpiricalDistribution {
 public:
  EmpiricalDistribution(std::vector<double> sorted_values,
                        std::vector<double> weights);

  std::size_t size() const { return values_.size(); }
  bool uniform() const { return uniform_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& weights() const { return weights_; }
  // Plotting position of each order statistic.
  const std::vector<double>& positions() const { return positions_; }

 private:
  std::vector<double> values_;
  std::vector<double> weights_;
  std::vector<double> positions_;
  bool uniform_ = false;
};

// Discretized quantile function on the shared rank grid p_k = (k + 0.5) / m.
struct QuantileGrid {
  std::vector<double> ranks;
  std::vector<double> quantiles;

  std::size_t size() const { return ranks.size(); }
};

inline constexpr std::size_t kDefaultGridSize = 1000;

// Neumaier-compensated sum.
double compensated_sum(std::span<const double> values);

// Sorted copy of `samples` with uniform weights.
EmpiricalDistribution empirical_from_samples(std::span<const double> samples);

// Rank grid p_k = (2k + 1) / (2m), k = 0..m-1.
std::vector<double> hazen_ranks(std::size_t m);

double quantile(const EmpiricalDistribution& dist, double p);
// Evaluates the piecewise-linear quantile function stored in a grid.
double quantile(const QuantileGrid& grid, double p);

enum class RankContext {
  // `x` must be one of the samples.
  in_sample,
  // Out-of-sample values interpolate linearly between the midranks of the
  // neighbouring samples; constant beyond the extremes.
  interpolate,
};

// Midrank of `x`: the average plotting position of all samples equal to x.
double cdf_rank(const EmpiricalDistribution& dist, double x,
                RankContext context = RankContext::in_sample);

// Midrank of every sample in `values` (any order) within its own sample set.
// Tied values share one output. Output is index-aligned with the input.
std::vector<double> midranks(std::span<const double> values);

QuantileGrid discretize_quantiles(const EmpiricalDistribution& dist,
                                  std::size_t m);

}  // namespace fairot

#endif  // FAIROT_EMPIRICAL_HPP_
