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

#ifndef NESTEDVI_RANDOM_HPP_
#define NESTEDVI_RANDOM_HPP_

#include <array>
#include <cstdint>

#include "nestedvi/core.hpp"

namespace nvi {

// xoshiro256** seeded through splitmix64. Bit-identical output on every
// platform; the standard <random> distributions are not, so uniform and
// normal variates are derived here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  // Uniform in [0, 1) from the top 53 bits.
  double uniform();
  // Standard normal via Box-Muller.
  double normal();
  // Advances the state by 2^128 draws; used to split independent streams.
  void jump();

  Vector uniform_vector(Eigen::Index n);
  Vector normal_vector(Eigen::Index n);

 private:
  std::array<std::uint64_t, 4> state_{};
};

// Uniformly distributed member of the set (ball, box) or uniform on the
// simplex (flat Dirichlet).
Vector sample_member(const FeasibleSet& set, Rng& rng);

// Random direction pushed to the boundary of the set.
Vector sample_boundary(const FeasibleSet& set, Rng& rng);

}  // namespace nvi

#endif  // NESTEDVI_RANDOM_HPP_
