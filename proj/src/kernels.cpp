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

#include "fairot/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

#ifdef FAIROT_HAVE_OPENMP
#include <omp.h>
#endif

namespace fairot::kernels {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Runs body(i) for i in [0, n). The OpenMP path uses a static schedule; the
// body owns its output element, so the split never changes results.
template <typename Body>
void for_each_index(std::size_t n, Backend backend, Body&& body) {
#ifdef FAIROT_HAVE_OPENMP
  if (backend == Backend::openmp) {
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
      body(static_cast<std::size_t>(i));
    }
    return;
  }
#else
  (void)backend;
#endif
  for (std::size_t i = 0; i < n; ++i) body(i);
}

double row_lse(const double* cost_row, const double* potential,
               std::size_t cols) {
  double peak = kNegInf;
  for (std::size_t j = 0; j < cols; ++j) {
    const double v = potential[j] - cost_row[j];
    if (v > peak) peak = v;
  }
  if (peak == kNegInf) return kNegInf;
  double acc = 0.0;
  for (std::size_t j = 0; j < cols; ++j) {
    acc += std::exp(potential[j] - cost_row[j] - peak);
  }
  return peak + std::log(acc);
}

}  // namespace

bool openmp_available() {
#ifdef FAIROT_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

Backend default_backend() {
  return openmp_available() ? Backend::openmp : Backend::serial;
}

int max_threads() {
#ifdef FAIROT_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void log_sum_exp_rows(std::span<const double> cost, std::size_t cols,
                      std::span<const double> potential, std::span<double> out,
                      Backend backend) {
  const double* c = cost.data();
  const double* g = potential.data();
  double* o = out.data();
  for_each_index(out.size(), backend,
                 [=](std::size_t i) { o[i] = row_lse(c + i * cols, g, cols); });
}

void exp_plan(std::span<const double> cost, std::size_t cols,
              std::span<const double> row, std::span<const double> col,
              std::span<double> plan, Backend backend) {
  const double* c = cost.data();
  const double* f = row.data();
  const double* g = col.data();
  double* p = plan.data();
  for_each_index(row.size(), backend, [=](std::size_t i) {
    for (std::size_t j = 0; j < cols; ++j) {
      p[i * cols + j] = std::exp(f[i] + g[j] - c[i * cols + j]);
    }
  });
}

void plan_projection(std::span<const double> plan, std::size_t cols,
                     std::span<const double> support, std::size_t dim,
                     std::span<double> out, Backend backend) {
  const std::size_t rows = out.size() / dim;
  const double* p = plan.data();
  const double* y = support.data();
  double* o = out.data();
  for_each_index(rows, backend, [=](std::size_t i) {
    const double* pi = p + i * cols;
    double* oi = o + i * dim;
    double mass = 0.0;
    for (std::size_t k = 0; k < dim; ++k) oi[k] = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
      mass += pi[j];
      for (std::size_t k = 0; k < dim; ++k) oi[k] += pi[j] * y[j * dim + k];
    }
    for (std::size_t k = 0; k < dim; ++k) oi[k] /= mass;
  });
}

void weighted_row_sum(std::span<const double> rows,
                      std::span<const double> weights, std::span<double> out,
                      Backend backend) {
  const std::size_t m = out.size();
  const std::size_t groups = weights.size();
  const double* r = rows.data();
  const double* w = weights.data();
  double* o = out.data();
  for_each_index(m, backend, [=](std::size_t k) {
    double acc = 0.0;
    for (std::size_t g = 0; g < groups; ++g) acc += w[g] * r[g * m + k];
    o[k] = acc;
  });
}

void blend(std::span<const double> raw, std::span<const double> target,
           std::span<const double> theta, std::span<double> out,
           Backend backend) {
  const double* s = raw.data();
  const double* t = target.data();
  const double* th = theta.data();
  double* o = out.data();
  for_each_index(out.size(), backend, [=](std::size_t i) {
    o[i] = th[i] == 0.0 ? s[i] : (1.0 - th[i]) * s[i] + th[i] * t[i];
  });
}

}  // namespace fairot::kernels
