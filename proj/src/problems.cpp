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

#include "nestedvi/problems.hpp"

#include <cmath>

#include "nestedvi/random.hpp"

namespace nvi {

NestedVIProblem rotation2d() {
  Matrix g(2, 2);
  g << 0.0, -0.5, 0.5, 0.0;
  Matrix f(2, 2);
  f << 0.0, 1.0, -1.0, 0.0;
  NestedVIProblem problem(AffineMap(g), AffineMap(f), FeasibleSet::unit_ball(2));
  problem.set_known_solution(Vector::Zero(2));
  return problem;
}

Matrix skew_antidiagonal(const Vector& v) {
  if (v.size() < 1) throw InputError("skew_antidiagonal needs at least one value");
  const Eigen::Index n = 2 * v.size();
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    m(j, n - 1 - j) = v[j];
    m(n - 1 - j, j) = -v[j];
  }
  return m;
}

NestedVIProblem random_skew_rank_one(const RandomFamilySpec& spec) {
  if (spec.n < 2 || spec.n % 2 != 0) throw InputError("random family needs an even n >= 2");
  if (!(spec.zeta >= 0.0) || !std::isfinite(spec.zeta))
    throw InputError("zeta must be nonnegative and finite");
  const Eigen::Index n = spec.n;
  Rng rng(spec.seed);
  const Vector v_g = rng.uniform_vector(n / 2);
  const Vector u_g = rng.uniform_vector(n);
  const Vector w_g = rng.uniform_vector(n);
  const Vector v_f = rng.uniform_vector(n / 2);
  const Vector u_f = rng.uniform_vector(n);
  const Vector w_f = rng.uniform_vector(n);
  const Vector v_b = rng.uniform_vector(n);

  const Matrix m_g = skew_antidiagonal(v_g) + spec.zeta * u_g * (u_g + 0.01 * w_g).transpose();
  const Matrix m_f = skew_antidiagonal(v_f) + spec.zeta * u_f * (u_f + 0.01 * w_f).transpose();
  return NestedVIProblem(AffineMap(m_g, spec.zeta * v_b), AffineMap(m_f),
                         FeasibleSet::unit_ball(n));
}

}  // namespace nvi
