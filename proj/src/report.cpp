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

#include "fairot/report.hpp"

#include <cstdio>
#include <sstream>

#include "fairot/csv.hpp"

namespace fairot {
namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out + "\"";
}

std::string number(double v) { return csv::format_full(v); }

std::string optional_number(const std::optional<double>& v) {
  return v ? number(*v) : "null";
}

}  // namespace

std::string report_to_json(const FairnessReport& report,
                           const std::map<std::string, std::size_t>& group_sizes) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"individual_fairness_error\": "
      << optional_number(report.individual_fairness_error) << ",\n";
  out << "  \"group_fairness_w2\": "
      << (report.group_fairness ? number(report.group_fairness->w2) : "null") << ",\n";
  out << "  \"group_fairness_ks\": "
      << (report.group_fairness ? number(report.group_fairness->ks) : "null") << ",\n";
  out << "  \"utility_loss_mean_abs\": " << number(report.utility.mean_abs) << ",\n";
  out << "  \"utility_loss_w2\": " << number(report.utility.w2) << ",\n";

  out << "  \"selection\": ";
  if (report.selection && report.selection_rule) {
    const auto& rule = *report.selection_rule;
    out << "{\n    \"rule\": "
        << (rule.kind == SelectionRule::Kind::threshold ? "\"threshold\"" : "\"top_k\"")
        << ",\n";
    if (rule.kind == SelectionRule::Kind::threshold) {
      out << "    \"threshold\": " << number(rule.threshold) << ",\n";
    } else {
      out << "    \"k\": " << rule.k << ",\n";
    }
    out << "    \"rates\": {";
    for (std::size_t g = 0; g < report.selection->groups.size(); ++g) {
      out << (g == 0 ? "\n" : ",\n") << "      "
          << quote(report.selection->groups[g].label()) << ": "
          << number(report.selection->rates[g]);
    }
    out << "\n    },\n    \"ratio\": " << number(report.selection->ratio) << "\n  },\n";
  } else {
    out << "null,\n";
  }

  out << "  \"theta\": {\n    \"default\": " << number(report.theta.default_theta())
      << ",\n    \"overrides\": {";
  bool first = true;
  for (const auto& [key, theta] : report.theta.overrides()) {
    out << (first ? "\n" : ",\n") << "      " << quote(key.label()) << ": " << number(theta);
    first = false;
  }
  out << (first ? "}" : "\n    }") << "\n  },\n";

  out << "  \"grid_size\": " << report.grid_size << ",\n";
  out << "  \"group_sizes\": {";
  first = true;
  for (const auto& [label, size] : group_sizes) {
    out << (first ? "\n" : ",\n") << "    " << quote(label) << ": " << size;
    first = false;
  }
  out << (first ? "}" : "\n  }") << ",\n";

  out << "  \"warnings\": [";
  for (std::size_t i = 0; i < report.warnings.size(); ++i) {
    out << (i == 0 ? "\n" : ",\n") << "    " << quote(report.warnings[i].message);
  }
  out << (report.warnings.empty() ? "]" : "\n  ]") << "\n}\n";
  return out.str();
}

}  // namespace fairot
