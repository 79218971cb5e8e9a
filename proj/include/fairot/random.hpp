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

#ifndef FAIROT_RANDOM_HPP_
#define FAIROT_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace fairot {

// Reproducible random stream. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; the variate transforms below are
// written out explicitly because std:: distributions are
// implementation-defined.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed);
  // Independent stream keyed by a name, e.g. a group label. The stream does
  // not depend on which other streams exist.
  PortableRng(std::uint64_t seed, std::string_view stream);

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform01();
  // Uniform on (0, 1].
  double uniform_open0();
  // Uniform integer in [0, bound) without modulo bias.
  std::uint64_t below(std::uint64_t bound);
  // Standard normal via Box-Muller; the second variate of each pair is cached.
  double normal();
  // Gamma(shape, 1) via Marsaglia-Tsang.
  double gamma(double shape);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view text);

}  // namespace fairot

#endif  // FAIROT_RANDOM_HPP_
