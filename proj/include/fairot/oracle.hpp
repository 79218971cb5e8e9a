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

#ifndef FAIROT_ORACLE_HPP_
#define FAIROT_ORACLE_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "fairot/empirical.hpp"
#include "fairot/measure.hpp"

// Deliberately naive verifiers for the transport computations. Each refuses
// inputs beyond its size guard with ValidationError.
namespace fairot::oracle {

inline constexpr std::size_t kMaxPermutationSize = 8;
inline constexpr std::size_t kMaxLpSupport = 20;
inline constexpr std::size_t kMaxCoordinateGrid = 50;

// min over permutations s of (1/n) sum_i |x_i - y_s(i)|^2, by enumeration.
// Points are row major with the given dimension.
double ot_cost_bruteforce(std::span<const double> x, std::span<const double> y,
                          std::size_t dimension = 1);

struct ExactTransport {
  double cost = 0.0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> plan;
};

// Exact optimal transport by the transportation simplex (north-west corner
// start, MODI pricing).
ExactTransport lp_transport_exact(const DiscreteMeasure& mu,
                                  const DiscreteMeasure& nu);
// Same on an explicit cost matrix (rows = a.size(), cols = b.size()).
ExactTransport lp_transport_exact(std::span<const double> a,
                                  std::span<const double> b,
                                  std::span<const double> cost);

// For each rank p_k, the lattice point lo + t * resolution minimizing
// sum_g w_g (q - Q_g(p_k))^2, found by exhaustive search.
QuantileGrid barycenter_coordinate_oracle(std::span<const EmpiricalDistribution> dists,
                                          std::span<const double> weights,
                                          std::size_t m, double resolution);

}  // namespace fairot::oracle

#endif  // FAIROT_ORACLE_HPP_
