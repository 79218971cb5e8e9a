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

#include "fairot/synth.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "fairot/error.hpp"
#include "fairot/random.hpp"

namespace fairot {
namespace {

double parse_number(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ValidationError("cannot parse number '" + std::string(text) + "'");
  }
  return value;
}

void check(const ScoreDistribution& d) {
  const bool ok = std::isfinite(d.p1) && std::isfinite(d.p2) &&
                  (d.kind == ScoreDistribution::Kind::gaussian ? d.p2 > 0.0
                   : d.kind == ScoreDistribution::Kind::beta   ? d.p1 > 0.0 && d.p2 > 0.0
                                                                : d.p1 < d.p2);
  if (!ok) throw ValidationError("invalid distribution " + d.describe());
}

double draw(const ScoreDistribution& d, PortableRng& rng) {
  switch (d.kind) {
    case ScoreDistribution::Kind::gaussian:
      return d.p1 + d.p2 * rng.normal();
    case ScoreDistribution::Kind::beta: {
      const double x = rng.gamma(d.p1);
      const double y = rng.gamma(d.p2);
      return x / (x + y);
    }
    case ScoreDistribution::Kind::uniform:
      return d.p1 + (d.p2 - d.p1) * rng.uniform01();
  }
  return 0.0;
}

}  // namespace

ScoreDistribution ScoreDistribution::parse(const std::string& text) {
  const auto open = text.find('(');
  const auto close = text.rfind(')');
  const auto comma = text.find(',', open);
  if (open == std::string::npos || close == std::string::npos ||
      comma == std::string::npos || close < comma) {
    throw ValidationError("cannot parse distribution '" + text + "'");
  }
  std::string name = text.substr(0, open);
  name.erase(0, name.find_first_not_of(" \t"));
  name.erase(name.find_last_not_of(" \t") + 1);
  if (text.find_first_not_of(" \t", close + 1) != std::string::npos) {
    throw ValidationError("trailing text after distribution '" + text + "'");
  }
  const std::string_view view(text);
  const double p1 = parse_number(view.substr(open + 1, comma - open - 1));
  const double p2 = parse_number(view.substr(comma + 1, close - comma - 1));
  ScoreDistribution d;
  if (name == "gaussian") {
    d = gaussian(p1, p2);
  } else if (name == "beta") {
    d = beta(p1, p2);
  } else if (name == "uniform") {
    d = uniform(p1, p2);
  } else {
    throw ValidationError("unknown distribution '" + name + "'");
  }
  check(d);
  return d;
}

std::string ScoreDistribution::describe() const {
  std::ostringstream out;
  out << (kind == Kind::gaussian ? "gaussian" : kind == Kind::beta ? "beta" : "uniform")
      << '(' << p1 << ',' << p2 << ')';
  return out.str();
}

GroupSpec GroupSpec::parse(const std::string& text) {
  const auto first = text.find(':');
  const auto second = text.find(':', first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw ValidationError("group spec '" + text + "' is not key:size:distribution");
  }
  GroupSpec spec;
  spec.key = GroupKey::parse(text.substr(0, first));
  const double size = parse_number(std::string_view(text).substr(first + 1, second - first - 1));
  if (!(size >= 1.0) || size != std::floor(size)) {
    throw ValidationError("group spec '" + text + "' needs a positive integer size");
  }
  spec.size = static_cast<std::size_t>(size);
  std::string rest = text.substr(second + 1);
  std::size_t start = 0;
  while (true) {
    const auto semi = rest.find(';', start);
    spec.dims.push_back(ScoreDistribution::parse(rest.substr(start, semi - start)));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return spec;
}

std::vector<ScoreRecord> generate_synthetic(const std::vector<GroupSpec>& specs,
                                            std::uint64_t seed) {
  if (specs.empty()) throw ValidationError("synthetic population needs group specs");
  const std::size_t dimension = specs.front().dims.size();
  std::set<GroupKey> keys;
  for (const auto& spec : specs) {
    if (spec.size < 1) throw ValidationError("group size must be at least 1");
    if (spec.dims.empty() || spec.dims.size() != dimension) {
      throw ValidationError("all group specs need the same score dimension");
    }
    if (spec.key.values.size() != specs.front().key.values.size()) {
      throw ValidationError("all group keys need the same attribute count");
    }
    if (!keys.insert(spec.key).second) {
      throw ValidationError("duplicate group '" + spec.key.label() + "'");
    }
    for (const auto& d : spec.dims) check(d);
  }

  std::vector<ScoreRecord> records;
  for (const auto& spec : specs) {
    const std::string label = spec.key.label();
    PortableRng rng(seed, label);
    for (std::size_t i = 0; i < spec.size; ++i) {
      ScoreRecord rec;
      rec.id = label + "-" + std::to_string(i);
      rec.group_values = spec.key.values;
      rec.score.reserve(dimension);
      for (const auto& d : spec.dims) rec.score.push_back(draw(d, rng));
      records.push_back(std::move(rec));
    }
  }
  return records;
}

std::vector<GroupSpec> two_gaussian_scenario(std::size_t size) {
  return {
      {GroupKey{{"A"}}, size, {ScoreDistribution::gaussian(0.4, 0.1)}},
      {GroupKey{{"B"}}, size, {ScoreDistribution::gaussian(0.6, 0.1)}},
  };
}

}  // namespace fairot
