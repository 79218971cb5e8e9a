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

#include "fairot/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>

#include "fairot/error.hpp"

namespace fairot::oracle {
namespace {

void refuse(const std::string& what, std::size_t size, std::size_t guard) {
  std::ostringstream msg;
  msg << "refused: " << what << " has size " << size
      << ", above the oracle guard of " << guard;
  throw ValidationError(msg.str());
}

class TransportationSimplex {
 public:
  TransportationSimplex(std::span<const double> a, std::span<const double> b,
                        std::span<const double> cost)
      : rows_(a.size()), cols_(b.size()), cost_(cost.begin(), cost.end()),
        flow_(rows_ * cols_, 0.0), basic_(rows_ * cols_, false) {
    north_west_corner(a, b);
  }

  ExactTransport solve() {
    const std::size_t max_pivots = 1000 * (rows_ + cols_) * (rows_ + cols_);
    for (std::size_t pivot = 0; pivot < max_pivots; ++pivot) {
      const auto [u, v] = potentials();
      std::size_t enter = flow_.size();
      double best = -1e-12;
      for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
          const std::size_t cell = i * cols_ + j;
          if (basic_[cell]) continue;
          const double reduced = cost_[cell] - u[i] - v[j];
          if (reduced < best) {
            best = reduced;
            enter = cell;
          }
        }
      }
      if (enter == flow_.size()) return result();
      pivot_on(enter);
    }
    throw RuntimeFailure("transportation simplex exceeded its pivot budget");
  }

 private:
  void north_west_corner(std::span<const double> a, std::span<const double> b) {
    std::vector<double> supply(a.begin(), a.end());
    std::vector<double> demand(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    while (true) {
      const double q = std::min(supply[i], demand[j]);
      flow_[i * cols_ + j] = q;
      basic_[i * cols_ + j] = true;
      supply[i] -= q;
      demand[j] -= q;
      if (i + 1 == rows_ && j + 1 == cols_) break;
      if (i + 1 == rows_) {
        ++j;
      } else if (j + 1 == cols_ || supply[i] == 0.0) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  // Node ids: rows 0..R-1, columns R..R+C-1; edges are basic cells.
  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(rows_ + cols_);
    for (std::size_t cell = 0; cell < flow_.size(); ++cell) {
      if (!basic_[cell]) continue;
      adj[cell / cols_].push_back(cell);
      adj[rows_ + cell % cols_].push_back(cell);
    }
    return adj;
  }

  std::size_t other_end(std::size_t cell, std::size_t node) const {
    const std::size_t row = cell / cols_;
    return node == row ? rows_ + cell % cols_ : row;
  }

  std::pair<std::vector<double>, std::vector<double>> potentials() const {
    const auto adj = adjacency();
    std::vector<double> pot(rows_ + cols_, 0.0);
    std::vector<bool> seen(rows_ + cols_, false);
    std::deque<std::size_t> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
      const std::size_t node = queue.front();
      queue.pop_front();
      for (std::size_t cell : adj[node]) {
        const std::size_t next = other_end(cell, node);
        if (seen[next]) continue;
        // u_i + v_j = c_ij
        pot[next] = cost_[cell] - pot[node];
        seen[next] = true;
        queue.push_back(next);
      }
    }
    std::vector<double> u(pot.begin(), pot.begin() + rows_);
    std::vector<double> v(pot.begin() + rows_, pot.end());
    return {u, v};
  }

  void pivot_on(std::size_t enter) {
    const std::size_t row = enter / cols_;
    const std::size_t col = rows_ + enter % cols_;
    // Tree path from the entering cell's column node to its row node.
    const auto adj = adjacency();
    std::vector<std::size_t> via(rows_ + cols_, flow_.size());
    std::vector<bool> seen(rows_ + cols_, false);
    std::deque<std::size_t> queue{col};
    seen[col] = true;
    while (!queue.empty() && !seen[row]) {
      const std::size_t node = queue.front();
      queue.pop_front();
      for (std::size_t cell : adj[node]) {
        const std::size_t next = other_end(cell, node);
        if (seen[next]) continue;
        seen[next] = true;
        via[next] = cell;
        queue.push_back(next);
      }
    }
    std::vector<std::size_t> path;
    for (std::size_t node = row; node != col;) {
      const std::size_t cell = via[node];
      path.push_back(cell);
      node = other_end(cell, node);
    }
    std::reverse(path.begin(), path.end());

    // path[0] touches the entering column and loses flow; signs alternate.
    std::size_t leave = flow_.size();
    double step = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < path.size(); k += 2) {
      if (flow_[path[k]] < step) {
        step = flow_[path[k]];
        leave = path[k];
      }
    }
    for (std::size_t k = 0; k < path.size(); ++k) {
      flow_[path[k]] += (k % 2 == 0) ? -step : step;
    }
    flow_[enter] = step;
    flow_[leave] = 0.0;
    basic_[enter] = true;
    basic_[leave] = false;
  }

  ExactTransport result() const {
    ExactTransport out;
    out.rows = rows_;
    out.cols = cols_;
    out.plan = flow_;
    for (auto& x : out.plan) x = std::max(x, 0.0);
    for (std::size_t cell = 0; cell < flow_.size(); ++cell) {
      out.cost += out.plan[cell] * cost_[cell];
    }
    return out;
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> cost_;
  std::vector<double> flow_;
  std::vector<bool> basic_;
};

}  // namespace

double ot_cost_bruteforce(std::span<const double> x, std::span<const double> y,
                          std::size_t dimension) {
  if (dimension == 0 || x.size() % dimension != 0) {
    throw ValidationError("points do not match the dimension");
  }
  if (x.size() != y.size()) {
    throw ValidationError("brute-force transport needs equal-size samples");
  }
  const std::size_t n = x.size() / dimension;
  if (n == 0) throw ValidationError("brute-force transport needs samples");
  if (n > kMaxPermutationSize) refuse("permutation oracle input", n, kMaxPermutationSize);

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < dimension; ++k) {
        const double d = x[i * dimension + k] - y[perm[i] * dimension + k];
        acc += d * d;
      }
    }
    best = std::min(best, acc);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best / static_cast<double>(n);
}

ExactTransport lp_transport_exact(std::span<const double> a,
                                  std::span<const double> b,
                                  std::span<const double> cost) {
  if (a.empty() || b.empty()) throw ValidationError("LP oracle needs masses");
  if (a.size() > kMaxLpSupport) refuse("LP source support", a.size(), kMaxLpSupport);
  if (b.size() > kMaxLpSupport) refuse("LP target support", b.size(), kMaxLpSupport);
  if (cost.size() != a.size() * b.size()) {
    throw ValidationError("cost matrix does not match the marginals");
  }
  const double sa = std::accumulate(a.begin(), a.end(), 0.0);
  const double sb = std::accumulate(b.begin(), b.end(), 0.0);
  if (std::abs(sa - sb) > 1e-9) {
    throw ValidationError("LP oracle marginals carry different total mass");
  }
  for (double w : a) {
    if (w < 0.0) throw ValidationError("LP oracle masses must be nonnegative");
  }
  for (double w : b) {
    if (w < 0.0) throw ValidationError("LP oracle masses must be nonnegative");
  }
  return TransportationSimplex(a, b, cost).solve();
}

ExactTransport lp_transport_exact(const DiscreteMeasure& mu,
                                  const DiscreteMeasure& nu) {
  if (mu.size() > kMaxLpSupport) refuse("LP source support", mu.size(), kMaxLpSupport);
  if (nu.size() > kMaxLpSupport) refuse("LP target support", nu.size(), kMaxLpSupport);
  validate_measure(mu);
  validate_measure(nu);
  const auto cost = squared_cost(mu, nu);
  return lp_transport_exact(mu.masses, nu.masses, cost);
}

QuantileGrid barycenter_coordinate_oracle(std::span<const EmpiricalDistribution> dists,
                                          std::span<const double> weights,
                                          std::size_t m, double resolution) {
  if (dists.empty() || dists.size() != weights.size()) {
    throw ValidationError("coordinate oracle needs one weight per distribution");
  }
  if (m < 2) throw ValidationError("quantile grid size must be at least 2");
  if (m > kMaxCoordinateGrid) refuse("coordinate oracle grid", m, kMaxCoordinateGrid);
  if (!(resolution > 0.0)) throw ValidationError("resolution must be positive");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw ValidationError("coordinate oracle weights must be nonnegative");
    total += w;
  }
  if (!(total > 0.0)) throw ValidationError("coordinate oracle weights sum to zero");

  std::vector<QuantileGrid> grids;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& d : dists) {
    grids.push_back(discretize_quantiles(d, m));
    lo = std::min(lo, grids.back().quantiles.front());
    hi = std::max(hi, grids.back().quantiles.back());
  }
  const double steps = std::ceil((hi - lo) / resolution) + 1.0;
  if (steps > 1e7) {
    throw ValidationError("refused: coordinate search lattice exceeds 1e7 points");
  }
  const auto count = static_cast<std::size_t>(steps);

  QuantileGrid out;
  out.ranks = hazen_ranks(m);
  out.quantiles.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    double best_q = lo;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < count; ++t) {
      const double q = lo + static_cast<double>(t) * resolution;
      double objective = 0.0;
      for (std::size_t g = 0; g < grids.size(); ++g) {
        const double diff = q - grids[g].quantiles[k];
        objective += (weights[g] / total) * diff * diff;
      }
      if (objective < best) {
        best = objective;
        best_q = q;
      }
    }
    out.quantiles[k] = best_q;
  }
  return out;
}

}  // namespace fairot::oracle
