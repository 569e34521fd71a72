// Copyright 2026 The nestedvi Authors
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

#ifndef NESTEDVI_ERROR_HPP_
#define NESTEDVI_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace nvi {

// Raised when a caller violates an operation's precondition (dimension
// mismatch, out-of-range parameter, point outside the feasible set).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace nvi

#endif  // NESTEDVI_ERROR_HPP_
