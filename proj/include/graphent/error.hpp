// Copyright 2026 The graphent Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace graphent {

// Precondition or input-validation failure (malformed strings, bad sizes,
// anticommuting products, missing stabilizer entries...).
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& message)
      : std::invalid_argument(message) {}
};

// Graph has an odd cycle, so no amber/blue coloring exists.
class NotTwoColorable : public std::domain_error {
 public:
  explicit NotTwoColorable(const std::string& message)
      : std::domain_error(message) {}
};

// An iterative solver hit its iteration cap without meeting tolerances.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& message)
      : std::runtime_error(message) {}
};

}  // namespace graphent
