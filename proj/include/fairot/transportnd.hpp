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

#ifndef FAIROT_TRANSPORTND_HPP_
#define FAIROT_TRANSPORTND_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fairot/interpolation.hpp"
#include "fairot/kernels.hpp"
#include "fairot/measure.hpp"
#include "fairot/population.hpp"
#include "fairot/transport1d.hpp"

namespace fairot {

struct SinkhornParams {
  // Regularization on min-max normalized scores.
  double epsilon = 0.01;
  // L1 tolerance on both marginals.
  double tol = 1e-6;
  std::size_t max_iter = 10000;
  kernels::Backend backend = kernels::default_backend();
};

// Entropic optimal transport with squared Euclidean cost, solved with
// log-domain Sinkhorn iterations. The returned plan is rounded onto the
// exact transport polytope; `row_error` and `col_error` record the marginal
// errors of the Sinkhorn iterate before rounding and decide `converged`.
TransportPlan sinkhorn_plan(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                            const SinkhornParams& params);
TransportPlan sinkhorn_plan(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                            double epsilon, double tol, std::size_t max_iter);

// Moves any nonnegative matrix onto the transport polytope of (a, b) with
// the rank-one correction of Altschuler, Weed and Rigollet.
void round_to_marginals(std::span<double> plan, std::span<const double> a,
                        std::span<const double> b);

struct BarycenterDiagnostics {
  std::size_t iterations = 0;
  bool converged = false;
  // Largest L1 marginal error over the input measures.
  double marginal_error = 0.0;
};

// Entropic W2 barycenter on a fixed support via log-domain iterative Bregman
// projections. Support points whose mass underflows to zero are dropped.
DiscreteMeasure barycenter_fixed_support(std::span<const DiscreteMeasure> measures,
                                         std::span<const double> weights,
                                         const std::vector<double>& support,
                                         std::size_t dimension,
                                         const SinkhornParams& params,
                                         BarycenterDiagnostics* diagnostics = nullptr);

// Per-dimension min-max scaling onto [0, 1]. Constant dimensions get scale 1.
class ScoreNormalizer {
 public:
  ScoreNormalizer(std::span<const double> points, std::size_t dimension);

  std::size_t dimension() const { return lo_.size(); }
  std::vector<double> apply(std::span<const double> points) const;

 private:
  std::vector<double> lo_;
  std::vector<double> scale_;
};

inline constexpr std::size_t kDefaultMaxSupport = 2000;

struct NdOptions {
  SinkhornParams sinkhorn;
  std::size_t max_support = kDefaultMaxSupport;
  std::uint64_t seed = 0;
  // Barycenter support in raw score coordinates; defaults to the union of
  // all sample points, subsampled to `max_support` with `seed`.
  std::optional<std::vector<double>> support;
};

// Fixed-support barycenter of the population's groups, transport solved on
// normalized scores. Support points are returned in raw coordinates.
// Throws RuntimeFailure when the Bregman iterations do not converge.
DiscreteMeasure fit_barycenter_nd(const ScoredPopulation& pop,
                                  BarycenterWeighting weighting,
                                  std::span<const double> explicit_weights,
                                  const NdOptions& options,
                                  BarycenterDiagnostics* diagnostics = nullptr);

// Maps every point x (row major, dim = target.dimension) to
// (1 - theta) x + theta T(x), where T is the barycentric projection of the
// entropic plan from the uniform measure on `points` to `target`, solved in
// the coordinates given by `normalizer`. Throws RuntimeFailure on a
// non-converged plan.
std::vector<double> displace_toward(std::span<const double> points,
                                    const DiscreteMeasure& target, double theta,
                                    const ScoreNormalizer& normalizer,
                                    const SinkhornParams& params);

// Multi-dimensional counterpart of interpolate_scores; requires d >= 2.
FairScores interpolate_scores_nd(const ScoredPopulation& pop,
                                 const DiscreteMeasure& bary,
                                 const ThetaPolicy& policy,
                                 const SinkhornParams& params);

}  // namespace fairot

#endif  // FAIROT_TRANSPORTND_HPP_
