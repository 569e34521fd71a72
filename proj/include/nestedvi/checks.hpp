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

#ifndef NESTEDVI_CHECKS_HPP_
#define NESTEDVI_CHECKS_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nestedvi/core.hpp"

namespace nvi::checks {

struct CheckResult {
  std::string name;
  std::int64_t samples = 0;
  std::int64_t failures = 0;
  // Description of the first violating sample, empty when green.
  std::string first_failure;

  bool passed() const { return failures == 0; }
};

using Projector = std::function<Vector(const FeasibleSet&, const Vector&)>;

struct CheckOptions {
  std::uint64_t seed = 2024;
  // Replaces FeasibleSet::project in the projection invariants; lets tests
  // confirm that a broken projector is caught.
  Projector projector;
};

// Runs every quantified invariant of the library (projection, LMO, norm
// bounds, step-size sums, residual bounds, averaging, determinism) at its
// full sample size.
std::vector<CheckResult> run_property_checks(const CheckOptions& options = {});

}  // namespace nvi::checks

#endif  // NESTEDVI_CHECKS_HPP_
