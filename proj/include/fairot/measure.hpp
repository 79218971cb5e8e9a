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

#ifndef FAIROT_MEASURE_HPP_
#define FAIROT_MEASURE_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace fairot {

// Finite measure on d-dimensional points. `support` is row major
// (size() x dimension).
struct DiscreteMeasure {
  std::size_t dimension = 1;
  std::vector<double> support;
  std::vector<double> masses;

  std::size_t size() const { return masses.size(); }
  std::span<const double> point(std::size_t i) const {
    return {support.data() + i * dimension, dimension};
  }
};

// Checks finiteness, positive masses and |sum - 1| <= 1e-9.
void validate_measure(const DiscreteMeasure& m);

// Uniform-mass measure over the given points.
DiscreteMeasure uniform_measure(std::vector<double> points, std::size_t dimension);

// Coupling between two measures (row major, source x target).
struct TransportPlan {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> matrix;
  double epsilon = 0.0;
  std::size_t iterations_run = 0;
  bool converged = false;
  // Marginal tolerance the plan was solved to, and the L1 errors reached.
  double tol = 0.0;
  double row_error = 0.0;
  double col_error = 0.0;

  double at(std::size_t i, std::size_t j) const { return matrix[i * cols + j]; }
};

// Squared Euclidean cost matrix, row major (a.size() x b.size()).
std::vector<double> squared_cost(const DiscreteMeasure& a,
                                 const DiscreteMeasure& b);

// sum_ij P_ij C_ij for C the squared Euclidean cost.
double plan_cost(const TransportPlan& plan, const DiscreteMeasure& a,
                 const DiscreteMeasure& b);

}  // namespace fairot

#endif  // FAIROT_MEASURE_HPP_
