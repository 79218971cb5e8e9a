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

#ifndef FAIROT_POPULATION_HPP_
#define FAIROT_POPULATION_HPP_

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace fairot {

// An intersectional protected group: the full tuple of attribute values.
struct GroupKey {
  std::vector<std::string> values;

  friend auto operator<=>(const GroupKey&, const GroupKey&) = default;
  friend bool operator==(const GroupKey&, const GroupKey&) = default;

  // Values joined with '|', e.g. "female|groupB".
  std::string label() const;
  static GroupKey parse(const std::string& label);
};

struct ScoreRecord {
  std::string id;
  std::vector<std::string> group_values;
  // One component per score dimension.
  std::vector<double> score;
};

struct PopulationWarning {
  GroupKey group;
  std::size_t size = 0;
  std::string message;
};

// Immutable set of scored individuals partitioned into groups. Groups are
// ordered lexicographically by key.
class ScoredPopulation {
 public:
  using GroupMap = std::map<GroupKey, std::vector<std::size_t>>;

  std::size_t size() const { return ids_.size(); }
  std::size_t dimension() const { return dimension_; }
  std::size_t attribute_count() const { return attribute_count_; }
  std::size_t group_count() const { return groups_.size(); }

  const std::string& id(std::size_t i) const { return ids_[i]; }
  const GroupKey& group_of(std::size_t i) const { return keys_[group_index_[i]]; }
  std::size_t group_index(std::size_t i) const { return group_index_[i]; }

  // Score of record i; `dimension()` components.
  std::span<const double> score(std::size_t i) const {
    return {scores_.data() + i * dimension_, dimension_};
  }
  // Scalar score of record i; only meaningful when dimension() == 1.
  double scalar(std::size_t i) const { return scores_[i * dimension_]; }
  std::span<const double> flat_scores() const { return scores_; }

  const GroupMap& groups() const { return groups_; }
  // Group keys in iteration order; position matches group_index().
  const std::vector<GroupKey>& group_keys() const { return keys_; }
  const std::vector<std::size_t>& members(std::size_t group) const {
    return members_[group];
  }

  // Scores of one group's members in record order, one dimension.
  std::vector<double> group_scalars(std::size_t group) const;

 private:
  friend ScoredPopulation build_population(std::vector<ScoreRecord> records,
                                           std::size_t attribute_count);

  std::size_t dimension_ = 0;
  std::size_t attribute_count_ = 0;
  std::vector<std::string> ids_;
  std::vector<double> scores_;
  std::vector<std::size_t> group_index_;
  GroupMap groups_;
  std::vector<GroupKey> keys_;
  std::vector<std::vector<std::size_t>> members_;
};

// Throws ValidationError on empty input, duplicate ids, wrong attribute
// count, inconsistent dimensions or non-finite scores.
ScoredPopulation build_population(std::vector<ScoreRecord> records,
                                  std::size_t attribute_count);

inline constexpr std::size_t kDefaultMinGroupSize = 100;

// One warning per group smaller than `min_group_size`. Never throws.
std::vector<PopulationWarning> validate_population(
    const ScoredPopulation& pop,
    std::size_t min_group_size = kDefaultMinGroupSize);

}  // namespace fairot

#endif  // FAIROT_POPULATION_HPP_
