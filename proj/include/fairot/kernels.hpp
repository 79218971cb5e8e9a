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

#ifndef FAIROT_KERNELS_HPP_
#define FAIROT_KERNELS_HPP_

#include <cstddef>
#include <span>

namespace fairot::kernels {

// Execution backend for the data-parallel loops. Every output element is
// reduced by a single thread in a fixed order, so both backends produce
// bitwise identical results; `serial` is the reference.
enum class Backend { serial, openmp };

bool openmp_available();
// `openmp` when compiled in, `serial` otherwise.
Backend default_backend();
int max_threads();

// out[i] = log sum_j exp(potential[j] - cost[i * cols + j]).
// Rows whose terms are all -inf produce -inf.
void log_sum_exp_rows(std::span<const double> cost, std::size_t cols,
                      std::span<const double> potential, std::span<double> out,
                      Backend backend);

// plan[i * cols + j] = exp(row[i] + col[j] - cost[i * cols + j]).
void exp_plan(std::span<const double> cost, std::size_t cols,
              std::span<const double> row, std::span<const double> col,
              std::span<double> plan, Backend backend);

// Barycentric projection of each row of `plan` (rows x cols) onto
// `support` (cols x dim, row major): out[i] = sum_j P_ij y_j / sum_j P_ij.
void plan_projection(std::span<const double> plan, std::size_t cols,
                     std::span<const double> support, std::size_t dim,
                     std::span<double> out, Backend backend);

// out[k] = sum_g weights[g] * rows[g * out.size() + k], summed in g order.
void weighted_row_sum(std::span<const double> rows,
                      std::span<const double> weights, std::span<double> out,
                      Backend backend);

// out[i] = (1 - theta[i]) * raw[i] + theta[i] * target[i]; raw[i] verbatim
// when theta[i] == 0.
void blend(std::span<const double> raw, std::span<const double> target,
           std::span<const double> theta, std::span<double> out,
           Backend backend);

}  // namespace fairot::kernels

#endif  // FAIROT_KERNELS_HPP_
