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

#ifndef FAIROT_PIPELINE_HPP_
#define FAIROT_PIPELINE_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairot/csv.hpp"
#include "fairot/interpolation.hpp"
#include "fairot/metrics.hpp"
#include "fairot/population.hpp"
#include "fairot/synth.hpp"
#include "fairot/transport1d.hpp"
#include "fairot/transportnd.hpp"

namespace fairot {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;

struct RunConfig {
  std::string input;
  std::string output;
  std::string report;
  std::vector<std::string> score_columns{"score"};
  // Concatenated in this order to form the group key.
  std::vector<std::string> group_columns{"group"};
  // Empty: ids are "row-<n>" with n the 1-based data row.
  std::string id_column;

  double theta = 0.0;
  std::map<GroupKey, double> theta_overrides;
  BarycenterWeighting weighting = BarycenterWeighting::size_proportional;
  std::map<GroupKey, double> explicit_weights;
  std::size_t grid = kDefaultGridSize;

  NdOptions nd;
  std::size_t min_group_size = kDefaultMinGroupSize;
  std::uint64_t seed = 0;
  kernels::Backend backend = kernels::default_backend();

  std::optional<SelectionRule> selection;
  std::vector<double> sweep_thetas;
  std::vector<GroupSpec> synth_groups;

  // Test hook for `verify`: perturbs the fitted barycenter before checking.
  bool corrupt_barycenter = false;

  // Throws ValidationError on out-of-range settings.
  void validate() const;
};

struct LoadedInput {
  csv::Table table;
  ScoredPopulation population;
  std::vector<PopulationWarning> warnings;
};

// Reads and validates the configured CSV. Rows with missing or malformed
// required fields are rejected with their 1-based data row number.
LoadedInput load_input(const RunConfig& cfg);
ScoredPopulation population_from_table(const csv::Table& table, const RunConfig& cfg);

using AnyBarycenter = std::variant<Barycenter1D, DiscreteMeasure>;

AnyBarycenter fit_any_barycenter(const ScoredPopulation& pop, const RunConfig& cfg);
FairScores apply_policy(const ScoredPopulation& pop, const AnyBarycenter& bary,
                        const ThetaPolicy& policy, const RunConfig& cfg);

// Input CSV with fair-score column(s) appended; original bytes of every
// input record are kept.
std::string render_output_csv(const csv::Table& table, const ScoredPopulation& pop,
                              const FairScores& fair, const RunConfig& cfg);
std::string render_sweep_csv(const ScoredPopulation& pop, const AnyBarycenter& bary,
                             const RunConfig& cfg);
std::string render_barycenter_csv(const AnyBarycenter& bary,
                                  const std::vector<std::string>& score_columns);
std::string render_synth_csv(const std::vector<ScoreRecord>& records,
                             std::size_t attribute_count);

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Oracle cross-checks on a small population (groups of at most 8).
std::vector<VerifyCheck> verify_population(const ScoredPopulation& pop,
                                           const RunConfig& cfg);

// Subcommands. Each returns an exit status and never throws: 0 success,
// 1 runtime or verification failure, 2 validation error.
int run_transform(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_audit(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_barycenter(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_synth(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace fairot

#endif  // FAIROT_PIPELINE_HPP_
