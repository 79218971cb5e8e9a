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

#include "fairot/transportnd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "fairot/error.hpp"
#include "fairot/random.hpp"

namespace fairot {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct ScaledCost {
  std::vector<double> forward;     // rows x cols, cost / epsilon
  std::vector<double> transposed;  // cols x rows
};

ScaledCost scale_cost(const std::vector<double>& raw, std::size_t rows,
                      std::size_t cols, double epsilon) {
  ScaledCost out;
  out.forward.resize(raw.size());
  out.transposed.resize(raw.size());
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double c = raw[i * cols + j] / epsilon;
      out.forward[i * cols + j] = c;
      out.transposed[j * rows + i] = c;
    }
  }
  return out;
}

// Geometric annealing from the largest cost down to `target`, halving each
// stage; always ends with `target`. Warm-started stages keep small-epsilon
// problems from stalling.
std::vector<double> epsilon_schedule(std::span<const double> raw_cost, double target) {
  double peak = 0.0;
  for (double c : raw_cost) peak = std::max(peak, c);
  std::vector<double> out;
  for (double eps = peak; eps > target; eps *= 0.5) out.push_back(eps);
  out.push_back(target);
  return out;
}

std::vector<double> log_of(std::span<const double> v) {
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(),
                 [](double x) { return std::log(x); });
  return out;
}

// sum_i |exp(potential_i + lse_i) - target_i|
double marginal_error(std::span<const double> potential,
                      std::span<const double> lse,
                      std::span<const double> target) {
  double err = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    err += std::abs(std::exp(potential[i] + lse[i]) - target[i]);
  }
  return err;
}

void check_params(const SinkhornParams& params) {
  if (!(params.epsilon > 0.0) || !std::isfinite(params.epsilon)) {
    throw ValidationError("entropic regularization epsilon must be positive");
  }
  if (!(params.tol > 0.0)) throw ValidationError("tolerance must be positive");
  if (params.max_iter == 0) throw ValidationError("max_iter must be positive");
}

// Bregman barycenter masses on every support point (zeros kept).
std::vector<double> bregman_masses(std::span<const DiscreteMeasure> measures,
                                   std::span<const double> weights,
                                   const DiscreteMeasure& support,
                                   const SinkhornParams& params,
                                   BarycenterDiagnostics& diag) {
  const std::size_t count = measures.size();
  const std::size_t cols = support.size();
  std::vector<std::vector<double>> raw_costs;
  std::vector<std::vector<double>> alpha;
  double peak = 0.0;
  for (const auto& m : measures) {
    raw_costs.push_back(squared_cost(m, support));
    alpha.push_back(log_of(m.masses));
    for (double c : raw_costs.back()) peak = std::max(peak, c);
  }

  // Absolute potentials carried between annealing stages.
  std::vector<std::vector<double>> Psi(count, std::vector<double>(cols, 0.0));
  std::vector<std::vector<double>> Phi(count);
  std::vector<std::vector<double>> psi(count, std::vector<double>(cols));
  std::vector<std::vector<double>> phi(count);
  std::vector<std::vector<double>> lse(count);
  std::vector<std::vector<double>> col_lse(count, std::vector<double>(cols));
  for (std::size_t k = 0; k < count; ++k) {
    Phi[k].assign(measures[k].size(), 0.0);
    phi[k].assign(measures[k].size(), 0.0);
    lse[k].assign(measures[k].size(), 0.0);
  }
  std::vector<double> log_b(cols, 0.0);
  const std::vector<double> peak_only{peak};

  diag = {};
  std::size_t total_iter = 0;
  for (const double eps : epsilon_schedule(peak_only, params.epsilon)) {
    std::vector<ScaledCost> costs;
    for (std::size_t k = 0; k < count; ++k) {
      costs.push_back(scale_cost(raw_costs[k], measures[k].size(), cols, eps));
      for (std::size_t j = 0; j < cols; ++j) psi[k][j] = Psi[k][j] / eps;
      for (std::size_t i = 0; i < phi[k].size(); ++i) phi[k][i] = Phi[k][i] / eps;
    }
    diag.converged = false;
    for (std::size_t iter = 0; total_iter < params.max_iter; ++iter, ++total_iter) {
      double err = 0.0;
      for (std::size_t k = 0; k < count; ++k) {
        kernels::log_sum_exp_rows(costs[k].forward, cols, psi[k], lse[k],
                                  params.backend);
        if (iter > 0) {
          err = std::max(err, marginal_error(phi[k], lse[k], measures[k].masses));
        }
      }
      if (iter > 0) {
        diag.marginal_error = err;
        if (err <= params.tol) {
          diag.converged = true;
          break;
        }
      }
      for (std::size_t k = 0; k < count; ++k) {
        for (std::size_t i = 0; i < phi[k].size(); ++i) {
          phi[k][i] = alpha[k][i] - lse[k][i];
        }
        kernels::log_sum_exp_rows(costs[k].transposed, measures[k].size(), phi[k],
                                  col_lse[k], params.backend);
      }
      for (std::size_t j = 0; j < cols; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < count; ++k) {
          if (col_lse[k][j] == kNegInf) {
            acc = kNegInf;
            break;
          }
          acc += weights[k] * col_lse[k][j];
        }
        log_b[j] = acc;
      }
      for (std::size_t k = 0; k < count; ++k) {
        for (std::size_t j = 0; j < cols; ++j) {
          psi[k][j] = log_b[j] == kNegInf ? kNegInf : log_b[j] - col_lse[k][j];
        }
      }
    }
    for (std::size_t k = 0; k < count; ++k) {
      for (std::size_t j = 0; j < cols; ++j) {
        Psi[k][j] = psi[k][j] == kNegInf ? kNegInf : psi[k][j] * eps;
      }
      for (std::size_t i = 0; i < phi[k].size(); ++i) Phi[k][i] = phi[k][i] * eps;
    }
  }
  diag.iterations = total_iter;

  std::vector<double> masses(cols);
  double total = 0.0;
  for (std::size_t j = 0; j < cols; ++j) {
    masses[j] = std::exp(log_b[j]);
    total += masses[j];
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw RuntimeFailure("barycenter masses vanished; increase epsilon");
  }
  for (auto& w : masses) w /= total;
  return masses;
}

std::vector<double> subsample_points(const ScoredPopulation& pop,
                                     std::size_t max_support,
                                     std::uint64_t seed) {
  const std::size_t n = pop.size();
  const std::size_t d = pop.dimension();
  std::vector<std::size_t> chosen(n);
  std::iota(chosen.begin(), chosen.end(), std::size_t{0});
  if (n > max_support) {
    PortableRng rng(seed, "barycenter-support");
    for (std::size_t i = 0; i < max_support; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(n - i));
      std::swap(chosen[i], chosen[j]);
    }
    chosen.resize(max_support);
    std::sort(chosen.begin(), chosen.end());
  }
  std::vector<double> points;
  points.reserve(chosen.size() * d);
  for (std::size_t i : chosen) {
    const auto s = pop.score(i);
    points.insert(points.end(), s.begin(), s.end());
  }
  return points;
}

std::vector<double> gather_group(const ScoredPopulation& pop, std::size_t g) {
  std::vector<double> points;
  points.reserve(pop.members(g).size() * pop.dimension());
  for (std::size_t i : pop.members(g)) {
    const auto s = pop.score(i);
    points.insert(points.end(), s.begin(), s.end());
  }
  return points;
}

void check_weights(std::span<const double> weights, std::size_t count) {
  if (weights.size() != count) {
    throw ValidationError("barycenter measures and weights differ in length");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw ValidationError("barycenter weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ValidationError("barycenter weights must sum to 1");
  }
}

}  // namespace

void round_to_marginals(std::span<double> plan, std::span<const double> a,
                        std::span<const double> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = b.size();
  for (std::size_t i = 0; i < rows; ++i) {
    double r = 0.0;
    for (std::size_t j = 0; j < cols; ++j) r += plan[i * cols + j];
    if (r > a[i]) {
      const double scale = a[i] / r;
      for (std::size_t j = 0; j < cols; ++j) plan[i * cols + j] *= scale;
    }
  }
  for (std::size_t j = 0; j < cols; ++j) {
    double c = 0.0;
    for (std::size_t i = 0; i < rows; ++i) c += plan[i * cols + j];
    if (c > b[j]) {
      const double scale = b[j] / c;
      for (std::size_t i = 0; i < rows; ++i) plan[i * cols + j] *= scale;
    }
  }
  std::vector<double> err_a(rows), err_b(cols, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    double r = 0.0;
    for (std::size_t j = 0; j < cols; ++j) r += plan[i * cols + j];
    err_a[i] = std::max(a[i] - r, 0.0);
    total += err_a[i];
  }
  for (std::size_t j = 0; j < cols; ++j) {
    double c = 0.0;
    for (std::size_t i = 0; i < rows; ++i) c += plan[i * cols + j];
    err_b[j] = std::max(b[j] - c, 0.0);
  }
  if (total <= 0.0) return;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      plan[i * cols + j] += err_a[i] * err_b[j] / total;
    }
  }
}

TransportPlan sinkhorn_plan(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                            const SinkhornParams& params) {
  if (mu.dimension != nu.dimension) {
    throw ValidationError("sinkhorn measures differ in dimension");
  }
  validate_measure(mu);
  validate_measure(nu);
  check_params(params);

  const std::size_t rows = mu.size();
  const std::size_t cols = nu.size();
  const auto raw_cost = squared_cost(mu, nu);
  const auto alpha = log_of(mu.masses);
  const auto beta = log_of(nu.masses);
  // Potentials in cost units; f = F / eps inside a stage.
  std::vector<double> F(rows, 0.0), G(cols, 0.0);
  std::vector<double> f(rows), g(cols), lse_r(rows), lse_c(cols);

  std::size_t total_iter = 0;
  ScaledCost cost;
  for (const double eps : epsilon_schedule(raw_cost, params.epsilon)) {
    cost = scale_cost(raw_cost, rows, cols, eps);
    for (std::size_t j = 0; j < cols; ++j) g[j] = G[j] / eps;
    for (std::size_t i = 0; i < rows; ++i) f[i] = F[i] / eps;
    for (std::size_t iter = 0; total_iter < params.max_iter; ++iter, ++total_iter) {
      kernels::log_sum_exp_rows(cost.forward, cols, g, lse_r, params.backend);
      if (iter > 0 && marginal_error(f, lse_r, mu.masses) <= params.tol) break;
      for (std::size_t i = 0; i < rows; ++i) f[i] = alpha[i] - lse_r[i];
      kernels::log_sum_exp_rows(cost.transposed, rows, f, lse_c, params.backend);
      for (std::size_t j = 0; j < cols; ++j) g[j] = beta[j] - lse_c[j];
    }
    for (std::size_t i = 0; i < rows; ++i) F[i] = f[i] * eps;
    for (std::size_t j = 0; j < cols; ++j) G[j] = g[j] * eps;
  }

  TransportPlan plan;
  plan.rows = rows;
  plan.cols = cols;
  plan.epsilon = params.epsilon;
  plan.iterations_run = total_iter;
  plan.tol = params.tol;
  plan.matrix.resize(rows * cols);
  kernels::exp_plan(cost.forward, cols, f, g, plan.matrix, params.backend);

  for (std::size_t i = 0; i < rows; ++i) {
    double r = 0.0;
    for (std::size_t j = 0; j < cols; ++j) r += plan.matrix[i * cols + j];
    plan.row_error += std::abs(r - mu.masses[i]);
  }
  for (std::size_t j = 0; j < cols; ++j) {
    double c = 0.0;
    for (std::size_t i = 0; i < rows; ++i) c += plan.matrix[i * cols + j];
    plan.col_error += std::abs(c - nu.masses[j]);
  }
  plan.converged = plan.row_error <= params.tol && plan.col_error <= params.tol;
  round_to_marginals(plan.matrix, mu.masses, nu.masses);
  return plan;
}

TransportPlan sinkhorn_plan(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                            double epsilon, double tol, std::size_t max_iter) {
  SinkhornParams params;
  params.epsilon = epsilon;
  params.tol = tol;
  params.max_iter = max_iter;
  return sinkhorn_plan(mu, nu, params);
}

DiscreteMeasure barycenter_fixed_support(std::span<const DiscreteMeasure> measures,
                                         std::span<const double> weights,
                                         const std::vector<double>& support,
                                         std::size_t dimension,
                                         const SinkhornParams& params,
                                         BarycenterDiagnostics* diagnostics) {
  if (measures.empty()) {
    throw ValidationError("barycenter needs at least one measure");
  }
  if (dimension == 0 || support.empty() || support.size() % dimension != 0) {
    throw ValidationError("barycenter support is empty or malformed");
  }
  for (const auto& m : measures) {
    validate_measure(m);
    if (m.dimension != dimension) {
      throw ValidationError("barycenter measure dimension differs from support");
    }
  }
  check_weights(weights, measures.size());
  check_params(params);

  const auto grid = uniform_measure(support, dimension);
  BarycenterDiagnostics diag;
  const auto masses = bregman_masses(measures, weights, grid, params, diag);
  if (diagnostics != nullptr) *diagnostics = diag;

  DiscreteMeasure out;
  out.dimension = dimension;
  for (std::size_t j = 0; j < masses.size(); ++j) {
    if (masses[j] > 0.0) {
      out.masses.push_back(masses[j]);
      const auto p = grid.point(j);
      out.support.insert(out.support.end(), p.begin(), p.end());
    }
  }
  return out;
}

ScoreNormalizer::ScoreNormalizer(std::span<const double> points,
                                 std::size_t dimension)
    : lo_(dimension, std::numeric_limits<double>::infinity()),
      scale_(dimension, -std::numeric_limits<double>::infinity()) {
  if (dimension == 0 || points.empty() || points.size() % dimension != 0) {
    throw ValidationError("cannot normalize an empty point set");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::size_t k = i % dimension;
    lo_[k] = std::min(lo_[k], points[i]);
    scale_[k] = std::max(scale_[k], points[i]);
  }
  for (std::size_t k = 0; k < dimension; ++k) {
    scale_[k] -= lo_[k];
    if (!(scale_[k] > 0.0)) scale_[k] = 1.0;
  }
}

std::vector<double> ScoreNormalizer::apply(std::span<const double> points) const {
  const std::size_t d = lo_.size();
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    out[i] = (points[i] - lo_[i % d]) / scale_[i % d];
  }
  return out;
}

DiscreteMeasure fit_barycenter_nd(const ScoredPopulation& pop,
                                  BarycenterWeighting weighting,
                                  std::span<const double> explicit_weights,
                                  const NdOptions& options,
                                  BarycenterDiagnostics* diagnostics) {
  const std::size_t d = pop.dimension();
  check_params(options.sinkhorn);
  if (options.max_support == 0) {
    throw ValidationError("barycenter support size must be positive");
  }
  const ScoreNormalizer normalizer(pop.flat_scores(), d);
  const auto support_raw = options.support
                               ? *options.support
                               : subsample_points(pop, options.max_support, options.seed);
  if (support_raw.empty() || support_raw.size() % d != 0) {
    throw ValidationError("barycenter support does not match the score dimension");
  }

  std::vector<DiscreteMeasure> measures;
  measures.reserve(pop.group_count());
  for (std::size_t g = 0; g < pop.group_count(); ++g) {
    measures.push_back(uniform_measure(normalizer.apply(gather_group(pop, g)), d));
  }
  const auto weights = barycenter_weights(pop, weighting, explicit_weights);
  check_weights(weights, measures.size());

  const auto grid = uniform_measure(normalizer.apply(support_raw), d);
  BarycenterDiagnostics diag;
  const auto masses = bregman_masses(measures, weights, grid, options.sinkhorn, diag);
  if (diagnostics != nullptr) *diagnostics = diag;
  if (!diag.converged) {
    std::ostringstream msg;
    msg << "barycenter iterations did not converge: marginal error "
        << diag.marginal_error << " after " << diag.iterations
        << " iterations (tol " << options.sinkhorn.tol << ")";
    throw RuntimeFailure(msg.str());
  }

  DiscreteMeasure out;
  out.dimension = d;
  for (std::size_t j = 0; j < masses.size(); ++j) {
    if (masses[j] > 0.0) {
      out.masses.push_back(masses[j]);
      out.support.insert(out.support.end(), support_raw.begin() + j * d,
                         support_raw.begin() + (j + 1) * d);
    }
  }
  return out;
}

std::vector<double> displace_toward(std::span<const double> points,
                                    const DiscreteMeasure& target, double theta,
                                    const ScoreNormalizer& normalizer,
                                    const SinkhornParams& params) {
  const std::size_t d = target.dimension;
  if (normalizer.dimension() != d) {
    throw ValidationError("normalizer dimension differs from the target");
  }
  if (points.empty() || points.size() % d != 0) {
    throw ValidationError("points do not match the target dimension");
  }
  std::vector<double> out(points.begin(), points.end());
  if (theta == 0.0) return out;

  const auto mu = uniform_measure(normalizer.apply(points), d);
  const DiscreteMeasure nu{d, normalizer.apply(target.support), target.masses};
  const auto plan = sinkhorn_plan(mu, nu, params);
  if (!plan.converged) {
    std::ostringstream msg;
    msg << "transport plan did not converge: row error " << plan.row_error
        << ", column error " << plan.col_error << " after "
        << plan.iterations_run << " iterations (epsilon " << params.epsilon
        << ", tol " << params.tol << ")";
    throw RuntimeFailure(msg.str());
  }

  std::vector<double> projected(points.size());
  kernels::plan_projection(plan.matrix, nu.size(), target.support, d, projected,
                           params.backend);
  const std::vector<double> thetas(points.size(), theta);
  kernels::blend(points, projected, thetas, out, params.backend);
  return out;
}

FairScores interpolate_scores_nd(const ScoredPopulation& pop,
                                 const DiscreteMeasure& bary,
                                 const ThetaPolicy& policy,
                                 const SinkhornParams& params) {
  const std::size_t d = pop.dimension();
  if (d < 2) {
    throw ValidationError(
        "interpolate_scores_nd handles multi-dimensional scores; use "
        "interpolate_scores for one-dimensional populations");
  }
  if (bary.dimension != d) {
    throw ValidationError("barycenter dimension differs from the population");
  }
  validate_measure(bary);
  check_overrides(policy, pop);
  check_params(params);

  const ScoreNormalizer normalizer(pop.flat_scores(), d);
  FairScores out{d, std::vector<double>(pop.flat_scores().begin(),
                                        pop.flat_scores().end()),
                 policy, bary};
  for (std::size_t g = 0; g < pop.group_count(); ++g) {
    const double theta = resolve_theta(policy, pop.group_keys()[g]);
    if (theta == 0.0) continue;
    const auto moved =
        displace_toward(gather_group(pop, g), bary, theta, normalizer, params);
    const auto& members = pop.members(g);
    for (std::size_t k = 0; k < members.size(); ++k) {
      std::copy_n(moved.begin() + k * d, d, out.values.begin() + members[k] * d);
    }
  }
  return out;
}

}  // namespace fairot
