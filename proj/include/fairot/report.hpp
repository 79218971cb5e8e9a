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

#ifndef FAIROT_REPORT_HPP_
#define FAIROT_REPORT_HPP_

#include <map>
#include <string>

#include "fairot/metrics.hpp"

namespace fairot {

// Serializes a report as one JSON document with stable field names. Numbers
// carry 17 significant digits so they round-trip exactly.
std::string report_to_json(const FairnessReport& report,
                           const std::map<std::string, std::size_t>& group_sizes = {});

}  // namespace fairot

#endif  // FAIROT_REPORT_HPP_
