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

#include "fairot/population.hpp"

#include <cmath>
#include <sstream>
#include <unordered_set>

#include "fairot/error.hpp"

namespace fairot {

std::string GroupKey::label() const {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += '|';
    out += values[i];
  }
  return out;
}

GroupKey GroupKey::parse(const std::string& label) {
  GroupKey key;
  std::size_t start = 0;
  while (true) {
    const auto bar = label.find('|', start);
    key.values.push_back(label.substr(start, bar - start));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  return key;
}

std::vector<double> ScoredPopulation::group_scalars(std::size_t group) const {
  const auto& idx = members_[group];
  std::vector<double> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(scalar(i));
  return out;
}

ScoredPopulation build_population(std::vector<ScoreRecord> records,
                                  std::size_t attribute_count) {
  if (records.empty()) {
    throw ValidationError("population must contain at least one record");
  }
  if (attribute_count == 0) {
    throw ValidationError("attribute_count must be positive");
  }
  ScoredPopulation pop;
  pop.attribute_count_ = attribute_count;
  pop.dimension_ = records.front().score.size();
  if (pop.dimension_ == 0) {
    throw ValidationError("scores must have at least one component");
  }

  std::unordered_set<std::string> seen;
  pop.ids_.reserve(records.size());
  pop.scores_.reserve(records.size() * pop.dimension_);
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& rec = records[i];
    if (!seen.insert(rec.id).second) {
      throw ValidationError("duplicate id '" + rec.id + "'");
    }
    if (rec.group_values.size() != attribute_count) {
      std::ostringstream msg;
      msg << "record '" << rec.id << "' has " << rec.group_values.size()
          << " group values, expected " << attribute_count;
      throw ValidationError(msg.str());
    }
    if (rec.score.size() != pop.dimension_) {
      std::ostringstream msg;
      msg << "record '" << rec.id << "' has score dimension "
          << rec.score.size() << ", expected " << pop.dimension_;
      throw ValidationError(msg.str());
    }
    for (double v : rec.score) {
      if (!std::isfinite(v)) {
        throw ValidationError("record '" + rec.id + "' has a non-finite score");
      }
    }
    pop.groups_[GroupKey{rec.group_values}].push_back(i);
    pop.ids_.push_back(std::move(rec.id));
    pop.scores_.insert(pop.scores_.end(), rec.score.begin(), rec.score.end());
  }

  pop.group_index_.resize(pop.ids_.size());
  for (const auto& [key, idx] : pop.groups_) {
    for (std::size_t i : idx) pop.group_index_[i] = pop.keys_.size();
    pop.keys_.push_back(key);
    pop.members_.push_back(idx);
  }
  return pop;
}

std::vector<PopulationWarning> validate_population(const ScoredPopulation& pop,
                                                   std::size_t min_group_size) {
  std::vector<PopulationWarning> out;
  for (const auto& [key, idx] : pop.groups()) {
    if (idx.size() < min_group_size) {
      std::ostringstream msg;
      msg << "group '" << key.label() << "' has " << idx.size()
          << " members, fewer than the recommended " << min_group_size
          << "; transport estimates may be unstable";
      out.push_back({key, idx.size(), msg.str()});
    }
  }
  return out;
}

}  // namespace fairot
