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

#ifndef FAIROT_METRICS_HPP_
#define FAIROT_METRICS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairot/interpolation.hpp"
#include "fairot/population.hpp"

namespace fairot {

// Fraction of cross-group pairs with raw_i < raw_j whose fair scores are
// strictly inverted (fair_i > fair_j). Pairs with equal raw scores are not
// counted; fair ties are not inversions. 0 when no such pair exists.
double individual_fairness_error(const ScoredPopulation& pop,
                                 const FairScores& fair);
// O(n^2) enumeration of the same quantity.
double individual_fairness_error_bruteforce(const ScoredPopulation& pop,
                                            const FairScores& fair);

// Number of index pairs i < j with values[i] > values[j].
std::uint64_t count_strict_inversions(std::span<const double> values);

struct GroupFairness {
  // Largest pairwise grid W2 between group fair-score distributions.
  double w2 = 0.0;
  // Largest pairwise Kolmogorov-Smirnov statistic.
  double ks = 0.0;
};

GroupFairness group_fairness_error(const ScoredPopulation& pop,
                                   const FairScores& fair, std::size_t m);

// sup_x |F_a(x) - F_b(x)| for the empirical CDFs of two samples.
double ks_statistic(std::span<const double> a, std::span<const double> b);

struct UtilityLoss {
  double mean_abs = 0.0;
  double w2 = 0.0;
};

UtilityLoss utility_loss(const ScoredPopulation& pop, const FairScores& fair);

struct SelectionRule {
  enum class Kind { threshold, top_k };
  Kind kind = Kind::threshold;
  double threshold = 0.0;
  std::size_t k = 0;

  static SelectionRule at_threshold(double tau) { return {Kind::threshold, tau, 0}; }
  static SelectionRule top(std::size_t k) { return {Kind::top_k, 0.0, k}; }
  std::string describe() const;
};

struct SelectionRates {
  std::vector<GroupKey> groups;
  std::vector<double> rates;
  // min rate / max rate; 1 when all rates are equal.
  double ratio = 1.0;
};

// Threshold rules select fair >= tau. Top-k ranks by fair score, then raw
// score, then id, all descending.
SelectionRates selection_rates(const ScoredPopulation& pop,
                               const FairScores& fair, const SelectionRule& rule);

struct FairnessReport {
  // One-dimensional metrics; absent for multi-dimensional scores.
  std::optional<double> individual_fairness_error;
  // Absent for single-group or multi-dimensional populations.
  std::optional<GroupFairness> group_fairness;
  UtilityLoss utility;
  std::optional<SelectionRule> selection_rule;
  std::optional<SelectionRates> selection;
  ThetaPolicy theta;
  std::size_t grid_size = 0;
  std::vector<PopulationWarning> warnings;
};

FairnessReport build_report(const ScoredPopulation& pop, const FairScores& fair,
                            std::size_t m,
                            const std::optional<SelectionRule>& rule,
                            std::vector<PopulationWarning> warnings = {});

}  // namespace fairot

#endif  // FAIROT_METRICS_HPP_
