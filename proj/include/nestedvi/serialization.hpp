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

#ifndef NESTEDVI_SERIALIZATION_HPP_
#define NESTEDVI_SERIALIZATION_HPP_

#include <string>

#include "nestedvi/core.hpp"

namespace nvi {

// {"n": int, "G": {"matrix": [[...]], "offset": [...]}, "F": {...},
//  "set": {"type": "ball", "center": [...], "radius": r}
//       | {"type": "box", "lower": [...], "upper": [...]}
//       | {"type": "simplex", "scale": s}}
// Matrices are row-major; reals are written with 17 significant digits.
std::string problem_to_json(const NestedVIProblem& problem);

// Throws InputError on schema violations (missing or unknown keys, wrong
// shapes, invalid set parameters). A ball without "center" is centered at the
// origin; a missing F/G "offset" means zero.
NestedVIProblem problem_from_json(const std::string& text);

// %.17g formatting used by every textual output.
std::string format_real(double x);

}  // namespace nvi

#endif  // NESTEDVI_SERIALIZATION_HPP_
