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

#ifndef FAIROT_ERROR_HPP_
#define FAIROT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace fairot {

// Bad input or configuration. The CLI maps this to exit status 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation that could not complete (e.g. a non-converged transport
// plan). The CLI maps this to exit status 1.
class RuntimeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fairot

#endif  // FAIROT_ERROR_HPP_
