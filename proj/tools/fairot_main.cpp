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

// fairot: fair score transformation by displacement toward the W2
// barycenter of the group score distributions.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fairot/csv.hpp"
#include "fairot/error.hpp"
#include "fairot/pipeline.hpp"

namespace {

std::map<fairot::GroupKey, double> parse_assignments(const std::vector<std::string>& items,
                                                     const std::string& what) {
  std::map<fairot::GroupKey, double> out;
  for (const auto& item : items) {
    const auto eq = item.rfind('=');
    double value = 0.0;
    if (eq == std::string::npos || eq == 0 ||
        !fairot::csv::parse_double(std::string_view(item).substr(eq + 1), value)) {
      throw fairot::ValidationError(what + " '" + item + "' is not GROUP=VALUE");
    }
    out[fairot::GroupKey::parse(item.substr(0, eq))] = value;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair score transformation via Wasserstein barycenters"};
  app.set_config("--config", "", "Key-value config file; command-line flags win");
  app.require_subcommand(1, 1);
  app.fallthrough();

  fairot::RunConfig cfg;
  std::vector<std::string> theta_overrides, weights, synth_groups;
  std::string weighting = "size";
  std::string backend = fairot::kernels::openmp_available() ? "openmp" : "serial";
  std::optional<double> select_threshold;
  std::optional<std::size_t> select_top_k;
  std::vector<double> thetas{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  std::size_t synth_size = 1000;

  app.add_option("--input,-i", cfg.input, "Input CSV with a header row");
  app.add_option("--output,-o", cfg.output, "Output file (default: stdout)");
  app.add_option("--report,-r", cfg.report, "JSON report file");
  app.add_option("--score-column", cfg.score_columns, "Score column(s); several for n-D scores")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--group-column", cfg.group_columns,
                 "Protected attribute column(s), combined in order")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--id-column", cfg.id_column, "Identifier column (default: row numbers)");
  app.add_option("--theta", cfg.theta, "Default interpolation degree in [0, 1]")
      ->capture_default_str();
  app.add_option("--theta-override", theta_overrides, "Per-group theta as GROUP=VALUE");
  app.add_option("--weights", weighting, "Barycenter weights")
      ->check(CLI::IsMember({"size", "uniform", "explicit"}))
      ->capture_default_str();
  app.add_option("--weight", weights, "Explicit barycenter weight as GROUP=VALUE");
  app.add_option("--grid", cfg.grid, "Quantile grid size")->capture_default_str();
  app.add_option("--epsilon", cfg.nd.sinkhorn.epsilon, "Entropic regularization (n-D)")
      ->capture_default_str();
  app.add_option("--tol", cfg.nd.sinkhorn.tol, "Sinkhorn marginal tolerance")
      ->capture_default_str();
  app.add_option("--max-iter", cfg.nd.sinkhorn.max_iter, "Sinkhorn iteration cap")
      ->capture_default_str();
  app.add_option("--max-support", cfg.nd.max_support, "n-D barycenter support size cap")
      ->capture_default_str();
  app.add_option("--min-group-size", cfg.min_group_size, "Warn below this group size")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--backend", backend, "Kernel backend")
      ->check(CLI::IsMember({"serial", "openmp"}))
      ->capture_default_str();
  auto* thr = app.add_option("--select-threshold", select_threshold,
                             "Selection rule: fair score >= threshold");
  app.add_option("--select-top-k", select_top_k, "Selection rule: top k by fair score")
      ->excludes(thr);
  app.add_option("--thetas", thetas, "Sweep thetas")->delimiter(',');
  app.add_option("--synth-group", synth_groups,
                 "Synthetic group as KEY:SIZE:DIST[;DIST], e.g. A:1000:gaussian(0.4,0.1)");
  app.add_option("--synth-size", synth_size, "Group size of the default two-gaussian scenario")
      ->capture_default_str();
  app.add_flag("--corrupt-barycenter", cfg.corrupt_barycenter,
               "Verification negative control")
      ->group("");

  auto* transform = app.add_subcommand("transform", "Write fair scores and a JSON report");
  auto* audit = app.add_subcommand("audit", "Emit the fairness report only");
  auto* sweep = app.add_subcommand("sweep", "Trade-off table over a theta sweep");
  auto* barycenter = app.add_subcommand("barycenter", "Emit the barycenter as CSV");
  auto* synth = app.add_subcommand("synth", "Generate a synthetic population CSV");
  auto* verify = app.add_subcommand("verify", "Cross-check transport against oracles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fairot::kExitInvalid;
  }

  try {
    cfg.theta_overrides = parse_assignments(theta_overrides, "theta override");
    cfg.explicit_weights = parse_assignments(weights, "barycenter weight");
    cfg.weighting = weighting == "size"      ? fairot::BarycenterWeighting::size_proportional
                    : weighting == "uniform" ? fairot::BarycenterWeighting::uniform
                                             : fairot::BarycenterWeighting::explicit_weights;
    cfg.backend = backend == "openmp" ? fairot::kernels::Backend::openmp
                                      : fairot::kernels::Backend::serial;
    if (select_threshold) cfg.selection = fairot::SelectionRule::at_threshold(*select_threshold);
    if (select_top_k) cfg.selection = fairot::SelectionRule::top(*select_top_k);
    cfg.sweep_thetas = thetas;
    for (const auto& spec : synth_groups) cfg.synth_groups.push_back(fairot::GroupSpec::parse(spec));
    if (cfg.synth_groups.empty() && synth_size != 1000) {
      cfg.synth_groups = fairot::two_gaussian_scenario(synth_size);
    }
  } catch (const fairot::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return fairot::kExitInvalid;
  }

  if (*transform) return fairot::run_transform(cfg, std::cout, std::cerr);
  if (*audit) return fairot::run_audit(cfg, std::cout, std::cerr);
  if (*sweep) return fairot::run_sweep(cfg, std::cout, std::cerr);
  if (*barycenter) return fairot::run_barycenter(cfg, std::cout, std::cerr);
  if (*synth) return fairot::run_synth(cfg, std::cout, std::cerr);
  if (*verify) return fairot::run_verify(cfg, std::cout, std::cerr);
  return fairot::kExitInvalid;
}
