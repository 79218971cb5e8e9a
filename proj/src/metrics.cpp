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

#include "fairot/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fairot/empirical.hpp"
#include "fairot/error.hpp"
#include "fairot/transport1d.hpp"

namespace fairot {
namespace {

void check_aligned(const ScoredPopulation& pop, const FairScores& fair) {
  if (fair.dimension != pop.dimension() || fair.size() != pop.size()) {
    throw ValidationError("fair scores are not aligned with the population");
  }
}

void check_scalar(const ScoredPopulation& pop) {
  if (pop.dimension() != 1) {
    throw ValidationError("metric is defined for one-dimensional scores only");
  }
}

std::uint64_t pairs(std::uint64_t n) { return n * (n - 1) / 2; }

std::uint64_t merge_count(std::vector<double>& v, std::vector<double>& buf,
                          std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t count = merge_count(v, buf, lo, mid) + merge_count(v, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      count += mid - i;
      buf[k++] = v[j++];
    } else {
      buf[k++] = v[i++];
    }
  }
  while (i < mid) buf[k++] = v[i++];
  while (j < hi) buf[k++] = v[j++];
  std::copy(buf.begin() + lo, buf.begin() + hi, v.begin() + lo);
  return count;
}

// Inversions of fair scores after ordering `idx` by (raw, fair) ascending.
std::uint64_t ordered_inversions(const ScoredPopulation& pop,
                                 const FairScores& fair,
                                 std::vector<std::size_t> idx) {
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (pop.scalar(a) != pop.scalar(b)) return pop.scalar(a) < pop.scalar(b);
    return fair.scalar(a) < fair.scalar(b);
  });
  std::vector<double> seq(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) seq[k] = fair.scalar(idx[k]);
  return count_strict_inversions(seq);
}

}  // namespace

std::uint64_t count_strict_inversions(std::span<const double> values) {
  std::vector<double> v(values.begin(), values.end());
  std::vector<double> buf(v.size());
  return merge_count(v, buf, 0, v.size());
}

double individual_fairness_error(const ScoredPopulation& pop,
                                 const FairScores& fair) {
  check_scalar(pop);
  check_aligned(pop, fair);
  const std::size_t n = pop.size();

  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::uint64_t cross_inversions = ordered_inversions(pop, fair, all);
  std::uint64_t cross_pairs = pairs(n);
  for (std::size_t g = 0; g < pop.group_count(); ++g) {
    cross_inversions -= ordered_inversions(pop, fair, pop.members(g));
    cross_pairs -= pairs(pop.members(g).size());
  }

  // Remove cross-group pairs tied on raw score.
  std::vector<std::size_t> by_raw = all;
  std::sort(by_raw.begin(), by_raw.end(), [&](std::size_t a, std::size_t b) {
    if (pop.scalar(a) != pop.scalar(b)) return pop.scalar(a) < pop.scalar(b);
    return pop.group_index(a) < pop.group_index(b);
  });
  std::size_t lo = 0;
  while (lo < n) {
    std::size_t hi = lo + 1;
    while (hi < n && pop.scalar(by_raw[hi]) == pop.scalar(by_raw[lo])) ++hi;
    std::uint64_t tied_cross = pairs(hi - lo);
    std::size_t run = lo;
    while (run < hi) {
      std::size_t end = run + 1;
      while (end < hi && pop.group_index(by_raw[end]) == pop.group_index(by_raw[run])) {
        ++end;
      }
      tied_cross -= pairs(end - run);
      run = end;
    }
    cross_pairs -= tied_cross;
    lo = hi;
  }

  if (cross_pairs == 0) return 0.0;
  return static_cast<double>(cross_inversions) / static_cast<double>(cross_pairs);
}

double individual_fairness_error_bruteforce(const ScoredPopulation& pop,
                                            const FairScores& fair) {
  check_scalar(pop);
  check_aligned(pop, fair);
  std::uint64_t inversions = 0;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    for (std::size_t j = 0; j < pop.size(); ++j) {
      if (pop.group_index(i) == pop.group_index(j)) continue;
      if (!(pop.scalar(i) < pop.scalar(j))) continue;
      ++total;
      if (fair.scalar(i) > fair.scalar(j)) ++inversions;
    }
  }
  return total == 0 ? 0.0
                    : static_cast<double>(inversions) / static_cast<double>(total);
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ValidationError("KS statistic needs samples");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double best = 0.0;
  while (i < x.size() || j < y.size()) {
    double v;
    if (j == y.size() || (i < x.size() && x[i] <= y[j])) {
      v = x[i];
    } else {
      v = y[j];
    }
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    best = std::max(best, std::abs(static_cast<double>(i) / nx -
                                   static_cast<double>(j) / ny));
  }
  return best;
}

GroupFairness group_fairness_error(const ScoredPopulation& pop,
                                   const FairScores& fair, std::size_t m) {
  check_scalar(pop);
  check_aligned(pop, fair);
  if (pop.group_count() < 2) {
    throw ValidationError("group fairness needs at least two groups");
  }
  std::vector<std::vector<double>> samples(pop.group_count());
  std::vector<QuantileGrid> grids;
  for (std::size_t g = 0; g < pop.group_count(); ++g) {
    for (std::size_t i : pop.members(g)) samples[g].push_back(fair.scalar(i));
    grids.push_back(discretize_quantiles(empirical_from_samples(samples[g]), m));
  }
  GroupFairness out;
  for (std::size_t g = 0; g < grids.size(); ++g) {
    for (std::size_t h = g + 1; h < grids.size(); ++h) {
      out.w2 = std::max(out.w2, w2_distance(grids[g], grids[h]));
      out.ks = std::max(out.ks, ks_statistic(samples[g], samples[h]));
    }
  }
  return out;
}

UtilityLoss utility_loss(const ScoredPopulation& pop, const FairScores& fair) {
  check_aligned(pop, fair);
  const std::size_t d = pop.dimension();
  double sum_abs = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    const auto raw = pop.score(i);
    const auto moved = fair.point(i);
    double sq = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double diff = moved[k] - raw[k];
      sq += diff * diff;
    }
    sum_abs += d == 1 ? std::abs(moved[0] - raw[0]) : std::sqrt(sq);
    sum_sq += sq;
  }
  const double n = static_cast<double>(pop.size());
  return {sum_abs / n, std::sqrt(sum_sq / n)};
}

std::string SelectionRule::describe() const {
  std::ostringstream out;
  if (kind == Kind::threshold) {
    out << "threshold " << threshold;
  } else {
    out << "top " << k;
  }
  return out.str();
}

SelectionRates selection_rates(const ScoredPopulation& pop,
                               const FairScores& fair, const SelectionRule& rule) {
  check_scalar(pop);
  check_aligned(pop, fair);
  const std::size_t n = pop.size();
  std::vector<bool> selected(n, false);
  if (rule.kind == SelectionRule::Kind::threshold) {
    for (std::size_t i = 0; i < n; ++i) selected[i] = fair.scalar(i) >= rule.threshold;
  } else {
    if (rule.k < 1 || rule.k > n) {
      std::ostringstream msg;
      msg << "top-k selection needs 1 <= k <= " << n << ", got " << rule.k;
      throw ValidationError(msg.str());
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (fair.scalar(a) != fair.scalar(b)) return fair.scalar(a) > fair.scalar(b);
      if (pop.scalar(a) != pop.scalar(b)) return pop.scalar(a) > pop.scalar(b);
      return pop.id(a) > pop.id(b);
    });
    for (std::size_t r = 0; r < rule.k; ++r) selected[order[r]] = true;
  }

  SelectionRates out;
  out.groups = pop.group_keys();
  for (std::size_t g = 0; g < pop.group_count(); ++g) {
    std::size_t count = 0;
    for (std::size_t i : pop.members(g)) count += selected[i] ? 1 : 0;
    out.rates.push_back(static_cast<double>(count) /
                        static_cast<double>(pop.members(g).size()));
  }
  const auto [lo, hi] = std::minmax_element(out.rates.begin(), out.rates.end());
  out.ratio = *hi == *lo ? 1.0 : *lo / *hi;
  return out;
}

FairnessReport build_report(const ScoredPopulation& pop, const FairScores& fair,
                            std::size_t m,
                            const std::optional<SelectionRule>& rule,
                            std::vector<PopulationWarning> warnings) {
  FairnessReport report;
  report.theta = fair.theta_used;
  report.grid_size = m;
  report.warnings = std::move(warnings);
  report.utility = utility_loss(pop, fair);
  if (pop.dimension() == 1) {
    report.individual_fairness_error = individual_fairness_error(pop, fair);
    if (pop.group_count() >= 2) {
      report.group_fairness = group_fairness_error(pop, fair, m);
    }
    if (rule) {
      report.selection_rule = rule;
      report.selection = selection_rates(pop, fair, *rule);
    }
  }
  return report;
}

}  // namespace fairot
