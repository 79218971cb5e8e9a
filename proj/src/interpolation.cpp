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

#include "fairot/interpolation.hpp"

#include <cmath>
#include <sstream>

#include "fairot/error.hpp"

namespace fairot {
namespace {

void check_theta(double theta, const std::string& where) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    std::ostringstream msg;
    msg << "theta " << theta << " for " << where << " outside [0, 1]";
    throw ValidationError(msg.str());
  }
}

}  // namespace

ThetaPolicy::ThetaPolicy(double default_theta,
                         std::map<GroupKey, double> overrides)
    : default_theta_(default_theta), overrides_(std::move(overrides)) {
  check_theta(default_theta_, "the default");
  for (const auto& [key, theta] : overrides_) {
    check_theta(theta, "group '" + key.label() + "'");
  }
}

double resolve_theta(const ThetaPolicy& policy, const GroupKey& group) {
  const auto it = policy.overrides().find(group);
  return it == policy.overrides().end() ? policy.default_theta() : it->second;
}

void check_overrides(const ThetaPolicy& policy, const ScoredPopulation& pop) {
  for (const auto& [key, theta] : policy.overrides()) {
    if (!pop.groups().contains(key)) {
      throw ValidationError("theta override names unknown group '" +
                            key.label() + "'");
    }
  }
}

FairScores interpolate_scores(const ScoredPopulation& pop,
                              const Barycenter1D& bary,
                              const ThetaPolicy& policy,
                              kernels::Backend backend) {
  if (pop.dimension() != 1) {
    throw ValidationError(
        "interpolate_scores handles one-dimensional scores; use "
        "interpolate_scores_nd for multi-dimensional populations");
  }
  const auto& q = bary.grid.quantiles;
  if (q.size() < 2 || bary.grid.ranks.size() != q.size()) {
    throw ValidationError("barycenter grid is malformed");
  }
  for (std::size_t k = 1; k < q.size(); ++k) {
    if (q[k] < q[k - 1]) {
      throw ValidationError("barycenter quantiles must be nondecreasing");
    }
  }
  check_overrides(policy, pop);

  const std::size_t n = pop.size();
  std::vector<double> raw(pop.flat_scores().begin(), pop.flat_scores().end());
  std::vector<double> target(n);
  std::vector<double> theta(n);
  for (std::size_t g = 0; g < pop.group_count(); ++g) {
    const auto& members = pop.members(g);
    const double th = resolve_theta(policy, pop.group_keys()[g]);
    const auto ranks = midranks(pop.group_scalars(g));
    for (std::size_t k = 0; k < members.size(); ++k) {
      target[members[k]] = quantile(bary.grid, ranks[k]);
      theta[members[k]] = th;
    }
  }

  FairScores out{1, std::vector<double>(n), policy, bary};
  kernels::blend(raw, target, theta, out.values, backend);
  return out;
}

}  // namespace fairot
