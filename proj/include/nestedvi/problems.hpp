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

#ifndef NESTEDVI_PROBLEMS_HPP_
#define NESTEDVI_PROBLEMS_HPP_

#include <cstdint>

#include "nestedvi/core.hpp"

namespace nvi {

// G = [[0, -1/2], [1/2, 0]], F = [[0, 1], [-1, 0]], Y the unit disc. The
// unique nested solution is the origin.
NestedVIProblem rotation2d();

// n x n matrix (n = 2 * v.size()) with v_j at (j, n-1-j) and -v_j at
// (n-1-j, j), 0-based. Skew-symmetric by construction.
Matrix skew_antidiagonal(const Vector& v);

struct RandomFamilySpec {
  Eigen::Index n = 100;
  double zeta = 0.1;
  std::uint64_t seed = 1;
};

// M = skew_antidiagonal(v) + zeta u (u + 0.01 w)^T for both maps,
// b_G = zeta v_b, zero offset for F, Y the unit ball. Draw order:
// v_G (n/2), u_G, w_G, v_F (n/2), u_F, w_F, v_b (n each), all uniform [0,1)
// from one Rng(seed) stream. Changing the order breaks reproducibility.
NestedVIProblem random_skew_rank_one(const RandomFamilySpec& spec);

}  // namespace nvi

#endif  // NESTEDVI_PROBLEMS_HPP_
