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

#include "fairot/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fairot/error.hpp"
#include "fairot/oracle.hpp"
#include "fairot/report.hpp"

namespace fairot {
namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open output file '" + path + "'");
  out << content;
  if (!out) throw RuntimeFailure("failed writing '" + path + "'");
}

std::vector<double> weights_in_group_order(const ScoredPopulation& pop,
                                           const RunConfig& cfg) {
  if (cfg.weighting != BarycenterWeighting::explicit_weights) return {};
  std::vector<double> out;
  for (const auto& key : pop.group_keys()) {
    const auto it = cfg.explicit_weights.find(key);
    if (it == cfg.explicit_weights.end()) {
      throw ValidationError("no explicit barycenter weight for group '" +
                            key.label() + "'");
    }
    out.push_back(it->second);
  }
  for (const auto& [key, w] : cfg.explicit_weights) {
    if (!pop.groups().contains(key)) {
      throw ValidationError("explicit weight names unknown group '" + key.label() + "'");
    }
  }
  return out;
}

std::map<std::string, std::size_t> group_sizes(const ScoredPopulation& pop) {
  std::map<std::string, std::size_t> out;
  for (const auto& [key, idx] : pop.groups()) out[key.label()] = idx.size();
  return out;
}

ThetaPolicy policy_for(const RunConfig& cfg, double theta) {
  return ThetaPolicy(theta, cfg.theta_overrides);
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const RuntimeFailure& e) {
    err << "failure: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kExitFailure;
  }
}

void emit_warnings(const std::vector<PopulationWarning>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w.message << '\n';
}

std::string fair_column_name(const RunConfig& cfg, std::size_t k, std::size_t d) {
  return d == 1 ? "fair_score" : "fair_score_" + cfg.score_columns[k];
}

VerifyCheck make_check(std::string name, bool passed, std::string detail) {
  return {std::move(name), passed, std::move(detail)};
}

std::string describe_gap(double got, double expected, double tol) {
  std::ostringstream out;
  out << "got " << csv::format_full(got) << ", oracle " << csv::format_full(expected)
      << ", tolerance " << tol;
  return out.str();
}

}  // namespace

void RunConfig::validate() const {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw ValidationError("theta must lie in [0, 1]");
  }
  ThetaPolicy(theta, theta_overrides);
  for (double t : sweep_thetas) {
    if (!(t >= 0.0 && t <= 1.0)) throw ValidationError("sweep thetas must lie in [0, 1]");
  }
  if (grid < 2) throw ValidationError("grid size must be at least 2");
  if (score_columns.empty()) throw ValidationError("at least one score column is required");
  if (group_columns.empty()) throw ValidationError("at least one group column is required");
  if (!(nd.sinkhorn.epsilon > 0.0)) throw ValidationError("epsilon must be positive");
  if (!(nd.sinkhorn.tol > 0.0)) throw ValidationError("tol must be positive");
  if (nd.sinkhorn.max_iter == 0) throw ValidationError("max_iter must be positive");
  if (nd.max_support == 0) throw ValidationError("max support must be positive");
  if (min_group_size == 0) throw ValidationError("min group size must be positive");
}

ScoredPopulation population_from_table(const csv::Table& table, const RunConfig& cfg) {
  std::vector<std::size_t> score_idx, group_idx;
  for (const auto& name : cfg.score_columns) score_idx.push_back(table.column(name));
  for (const auto& name : cfg.group_columns) group_idx.push_back(table.column(name));
  std::optional<std::size_t> id_idx;
  if (!cfg.id_column.empty()) id_idx = table.column(cfg.id_column);
  if (table.rows.empty()) throw ValidationError("input has no data rows");

  std::vector<ScoreRecord> records;
  records.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& fields = table.rows[r].fields;
    const std::string where = "row " + std::to_string(r + 1);
    auto field = [&](std::size_t idx, const std::string& column) -> const std::string& {
      if (idx >= fields.size() || fields[idx].empty()) {
        throw ValidationError(where + ": missing value in column '" + column + "'");
      }
      return fields[idx];
    };
    ScoreRecord rec;
    rec.id = id_idx ? field(*id_idx, cfg.id_column) : "row-" + std::to_string(r + 1);
    for (std::size_t k = 0; k < group_idx.size(); ++k) {
      rec.group_values.push_back(field(group_idx[k], cfg.group_columns[k]));
    }
    for (std::size_t k = 0; k < score_idx.size(); ++k) {
      double v = 0.0;
      if (!csv::parse_double(field(score_idx[k], cfg.score_columns[k]), v)) {
        throw ValidationError(where + ": cannot parse score '" + fields[score_idx[k]] +
                              "' in column '" + cfg.score_columns[k] + "'");
      }
      rec.score.push_back(v);
    }
    records.push_back(std::move(rec));
  }
  return build_population(std::move(records), cfg.group_columns.size());
}

LoadedInput load_input(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.input.empty()) throw ValidationError("no input file given");
  auto table = csv::read_file(cfg.input);
  auto pop = population_from_table(table, cfg);
  auto warnings = validate_population(pop, cfg.min_group_size);
  return {std::move(table), std::move(pop), std::move(warnings)};
}

AnyBarycenter fit_any_barycenter(const ScoredPopulation& pop, const RunConfig& cfg) {
  const auto weights = weights_in_group_order(pop, cfg);
  if (pop.dimension() == 1) {
    return fit_barycenter(pop, cfg.weighting, cfg.grid, weights, cfg.backend);
  }
  NdOptions options = cfg.nd;
  options.seed = cfg.seed;
  options.sinkhorn.backend = cfg.backend;
  return fit_barycenter_nd(pop, cfg.weighting, weights, options);
}

FairScores apply_policy(const ScoredPopulation& pop, const AnyBarycenter& bary,
                        const ThetaPolicy& policy, const RunConfig& cfg) {
  if (const auto* b1 = std::get_if<Barycenter1D>(&bary)) {
    return interpolate_scores(pop, *b1, policy, cfg.backend);
  }
  SinkhornParams params = cfg.nd.sinkhorn;
  params.backend = cfg.backend;
  return interpolate_scores_nd(pop, std::get<DiscreteMeasure>(bary), policy, params);
}

std::string render_output_csv(const csv::Table& table, const ScoredPopulation& pop,
                              const FairScores& fair, const RunConfig& cfg) {
  const std::size_t d = pop.dimension();
  std::string out = table.header.raw;
  for (std::size_t k = 0; k < d; ++k) out += "," + csv::escape(fair_column_name(cfg, k, d));
  out += table.header.terminator.empty() ? "\n" : table.header.terminator;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out += table.rows[r].raw;
    for (double v : fair.point(r)) out += "," + csv::format_shortest(v);
    out += table.rows[r].terminator;
  }
  return out;
}

std::string render_sweep_csv(const ScoredPopulation& pop, const AnyBarycenter& bary,
                             const RunConfig& cfg) {
  std::string out =
      "theta,individual_fairness_error,group_fairness_w2,group_fairness_ks,"
      "utility_loss_mean_abs,utility_loss_w2";
  if (cfg.selection) out += ",selection_ratio";
  out += "\n";
  for (double theta : cfg.sweep_thetas) {
    const auto fair = apply_policy(pop, bary, policy_for(cfg, theta), cfg);
    const auto report = build_report(pop, fair, cfg.grid, cfg.selection);
    auto opt = [](const std::optional<double>& v) {
      return v ? csv::format_full(*v) : std::string();
    };
    out += csv::format_full(theta) + "," + opt(report.individual_fairness_error) + ",";
    out += (report.group_fairness ? csv::format_full(report.group_fairness->w2) : "") + ",";
    out += (report.group_fairness ? csv::format_full(report.group_fairness->ks) : "") + ",";
    out += csv::format_full(report.utility.mean_abs) + "," +
           csv::format_full(report.utility.w2);
    if (cfg.selection) {
      out += "," + (report.selection ? csv::format_full(report.selection->ratio) : "");
    }
    out += "\n";
  }
  return out;
}

std::string render_barycenter_csv(const AnyBarycenter& bary,
                                  const std::vector<std::string>& score_columns) {
  std::string out;
  if (const auto* b1 = std::get_if<Barycenter1D>(&bary)) {
    out = "rank,quantile\n";
    for (std::size_t k = 0; k < b1->grid.size(); ++k) {
      out += csv::format_full(b1->grid.ranks[k]) + "," +
             csv::format_full(b1->grid.quantiles[k]) + "\n";
    }
    return out;
  }
  const auto& m = std::get<DiscreteMeasure>(bary);
  out = "mass";
  for (const auto& name : score_columns) out += "," + csv::escape(name);
  out += "\n";
  for (std::size_t j = 0; j < m.size(); ++j) {
    out += csv::format_full(m.masses[j]);
    for (double v : m.point(j)) out += "," + csv::format_full(v);
    out += "\n";
  }
  return out;
}

std::string render_synth_csv(const std::vector<ScoreRecord>& records,
                             std::size_t attribute_count) {
  std::string out = "id";
  if (attribute_count == 1) {
    out += ",group";
  } else {
    for (std::size_t k = 0; k < attribute_count; ++k) out += ",group_" + std::to_string(k + 1);
  }
  const std::size_t d = records.empty() ? 1 : records.front().score.size();
  if (d == 1) {
    out += ",score";
  } else {
    for (std::size_t k = 0; k < d; ++k) out += ",score_" + std::to_string(k + 1);
  }
  out += "\n";
  for (const auto& rec : records) {
    out += csv::escape(rec.id);
    for (const auto& v : rec.group_values) out += "," + csv::escape(v);
    for (double s : rec.score) out += "," + csv::format_shortest(s);
    out += "\n";
  }
  return out;
}

std::vector<VerifyCheck> verify_population(const ScoredPopulation& pop,
                                           const RunConfig& cfg) {
  for (std::size_t g = 0; g < pop.group_count(); ++g) {
    if (pop.members(g).size() > oracle::kMaxPermutationSize) {
      std::ostringstream msg;
      msg << "refused: group '" << pop.group_keys()[g].label() << "' has "
          << pop.members(g).size() << " members; verification supports at most "
          << oracle::kMaxPermutationSize << " per group";
      throw ValidationError(msg.str());
    }
  }
  constexpr double kExact = 1e-9;
  const std::size_t d = pop.dimension();
  const ScoreNormalizer normalizer(pop.flat_scores(), d);
  std::vector<VerifyCheck> checks;

  auto group_points = [&](std::size_t g) {
    std::vector<double> pts;
    for (std::size_t i : pop.members(g)) {
      const auto s = pop.score(i);
      pts.insert(pts.end(), s.begin(), s.end());
    }
    return pts;
  };

  for (std::size_t g = 0; g < pop.group_count(); ++g) {
    for (std::size_t h = g + 1; h < pop.group_count(); ++h) {
      const std::string pair = pop.group_keys()[g].label() + "~" + pop.group_keys()[h].label();
      const auto x = group_points(g);
      const auto y = group_points(h);
      const auto mu = uniform_measure(x, d);
      const auto nu = uniform_measure(y, d);
      const double lp = oracle::lp_transport_exact(mu, nu).cost;
      if (x.size() == y.size()) {
        const double brute = oracle::ot_cost_bruteforce(x, y, d);
        checks.push_back(make_check("lp_vs_permutation[" + pair + "]",
                                    std::abs(lp - brute) <= kExact,
                                    describe_gap(lp, brute, kExact)));
        if (d == 1) {
          const double w2 = w2_distance(empirical_from_samples(x),
                                        empirical_from_samples(y), x.size());
          checks.push_back(make_check("w2_vs_permutation[" + pair + "]",
                                      std::abs(w2 * w2 - brute) <= kExact,
                                      describe_gap(w2 * w2, brute, kExact)));
        }
      }
      const auto mu_n = uniform_measure(normalizer.apply(x), d);
      const auto nu_n = uniform_measure(normalizer.apply(y), d);
      SinkhornParams params = cfg.nd.sinkhorn;
      params.backend = cfg.backend;
      const auto plan = sinkhorn_plan(mu_n, nu_n, params);
      const double lp_n = oracle::lp_transport_exact(mu_n, nu_n).cost;
      const double entropic = plan_cost(plan, mu_n, nu_n);
      const double slack =
          params.epsilon * std::log(static_cast<double>(mu_n.size() * nu_n.size()));
      std::ostringstream detail;
      detail << "cost " << csv::format_full(entropic) << " in ["
             << csv::format_full(lp_n) << ", " << csv::format_full(lp_n + slack)
             << "], converged " << (plan.converged ? "yes" : "no");
      checks.push_back(make_check(
          "sinkhorn_within_lp_bounds[" + pair + "]",
          plan.converged && entropic >= lp_n - kExact && entropic <= lp_n + slack + kExact,
          detail.str()));
    }
  }
  if (d != 1) return checks;

  const std::size_t m = std::min(cfg.grid, oracle::kMaxCoordinateGrid);
  auto bary = fit_barycenter(pop, cfg.weighting, m, weights_in_group_order(pop, cfg),
                             cfg.backend);
  double lo = bary.grid.quantiles.front(), hi = bary.grid.quantiles.back();
  const double span = std::max(hi - lo, 1.0);
  if (cfg.corrupt_barycenter) {
    for (auto& q : bary.grid.quantiles) q += span;
  }
  std::vector<EmpiricalDistribution> dists;
  for (std::size_t g = 0; g < pop.group_count(); ++g) {
    dists.push_back(empirical_from_samples(pop.group_scalars(g)));
  }
  const double resolution = 1e-4 * span;
  const auto coord = oracle::barycenter_coordinate_oracle(dists, bary.weights, m, resolution);
  double worst = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    worst = std::max(worst, std::abs(coord.quantiles[k] - bary.grid.quantiles[k]));
  }
  checks.push_back(make_check("barycenter_vs_coordinate_oracle", worst <= resolution,
                              describe_gap(worst, 0.0, resolution)));

  const auto parity = interpolate_scores(pop, bary, ThetaPolicy(1.0), cfg.backend);
  for (std::size_t g = 0; g < pop.group_count(); ++g) {
    const auto& members = pop.members(g);
    std::vector<double> raw, moved;
    double cost = 0.0;
    for (std::size_t i : members) {
      raw.push_back(pop.scalar(i));
      moved.push_back(parity.scalar(i));
      cost += (pop.scalar(i) - parity.scalar(i)) * (pop.scalar(i) - parity.scalar(i));
    }
    cost /= static_cast<double>(members.size());
    const double brute = oracle::ot_cost_bruteforce(raw, moved);
    checks.push_back(make_check("monotone_map_optimal[" + pop.group_keys()[g].label() + "]",
                                std::abs(cost - brute) <= kExact,
                                describe_gap(cost, brute, kExact)));
  }

  const auto fair = interpolate_scores(pop, bary, policy_for(cfg, cfg.theta), cfg.backend);
  std::size_t inversions = 0;
  for (std::size_t g = 0; g < pop.group_count(); ++g) {
    for (std::size_t i : pop.members(g)) {
      for (std::size_t j : pop.members(g)) {
        if (pop.scalar(i) <= pop.scalar(j) && fair.scalar(i) > fair.scalar(j)) ++inversions;
      }
    }
  }
  checks.push_back(make_check("within_group_monotonicity", inversions == 0,
                              std::to_string(inversions) + " inversions"));
  const double fast = individual_fairness_error(pop, fair);
  const double slow = individual_fairness_error_bruteforce(pop, fair);
  checks.push_back(make_check("individual_fairness_vs_enumeration",
                              std::abs(fast - slow) <= kExact,
                              describe_gap(fast, slow, kExact)));
  return checks;
}

int run_transform(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto input = load_input(cfg);
    emit_warnings(input.warnings, err);
    const auto bary = fit_any_barycenter(input.population, cfg);
    const auto fair = apply_policy(input.population, bary, policy_for(cfg, cfg.theta), cfg);
    const auto report = build_report(input.population, fair, cfg.grid, cfg.selection,
                                     input.warnings);
    const auto csv_text = render_output_csv(input.table, input.population, fair, cfg);
    const auto json = report_to_json(report, group_sizes(input.population));
    if (cfg.output.empty()) {
      out << csv_text;
    } else {
      write_file(cfg.output, csv_text);
    }
    if (!cfg.report.empty()) {
      write_file(cfg.report, json);
    } else if (!cfg.output.empty()) {
      out << json;
    }
    return kExitOk;
  });
}

int run_audit(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto input = load_input(cfg);
    emit_warnings(input.warnings, err);
    const auto bary = fit_any_barycenter(input.population, cfg);
    const auto fair = apply_policy(input.population, bary, policy_for(cfg, cfg.theta), cfg);
    const auto report = build_report(input.population, fair, cfg.grid, cfg.selection,
                                     input.warnings);
    const auto json = report_to_json(report, group_sizes(input.population));
    if (cfg.report.empty()) {
      out << json;
    } else {
      write_file(cfg.report, json);
    }
    return kExitOk;
  });
}

int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.sweep_thetas.empty()) throw ValidationError("sweep needs at least one theta");
    const auto input = load_input(cfg);
    emit_warnings(input.warnings, err);
    const auto bary = fit_any_barycenter(input.population, cfg);
    const auto table = render_sweep_csv(input.population, bary, cfg);
    if (cfg.output.empty()) {
      out << table;
    } else {
      write_file(cfg.output, table);
    }
    return kExitOk;
  });
}

int run_barycenter(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto input = load_input(cfg);
    emit_warnings(input.warnings, err);
    const auto bary = fit_any_barycenter(input.population, cfg);
    const auto table = render_barycenter_csv(bary, cfg.score_columns);
    if (cfg.output.empty()) {
      out << table;
    } else {
      write_file(cfg.output, table);
    }
    return kExitOk;
  });
}

int run_synth(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto specs = cfg.synth_groups.empty() ? two_gaussian_scenario() : cfg.synth_groups;
    const auto records = generate_synthetic(specs, cfg.seed);
    const auto table = render_synth_csv(records, specs.front().key.values.size());
    if (cfg.output.empty()) {
      out << table;
    } else {
      write_file(cfg.output, table);
    }
    return kExitOk;
  });
}

int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto input = load_input(cfg);
    const auto checks = verify_population(input.population, cfg);
    bool all = true;
    for (const auto& c : checks) {
      out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
      all = all && c.passed;
    }
    out << (all ? "all checks passed" : "verification failed") << '\n';
    return all ? kExitOk : kExitFailure;
  });
}

}  // namespace fairot
