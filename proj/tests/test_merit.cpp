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

#include <gtest/gtest.h>

#include <cmath>

#include "nestedvi/error.hpp"
#include "nestedvi/merit.hpp"
#include "nestedvi/problems.hpp"
#include "nestedvi/random.hpp"

namespace nvi {
namespace {

Vector vec(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

// Gap on a ball in closed form: phi^T z + r ||phi|| - phi^T c.
double ball_gap_oracle(const Vector& phi, const Vector& z, const Vector& c, double r) {
  return phi.dot(z - c) + r * phi.norm();
}

TEST(SubproblemGap, RotationExamples) {
  const NestedVIProblem rot = rotation2d();
  for (double tau : {0.5, 1.0, 7.0}) EXPECT_EQ(subproblem_gap(rot, tau, vec(0, 0)), 0.0);
  // Phi_1(1, 0) = (0, -0.5); the LMO returns (0, 1), gap = 0.5.
  EXPECT_NEAR(subproblem_gap(rot, 1.0, vec(1, 0)), 0.5, 1e-15);
  // Phi_1(0, 1) = (0.5, 0); the LMO returns (-1, 0), gap = 0.5 * 1 = 0.5.
  EXPECT_NEAR(subproblem_gap(rot, 1.0, vec(0, 1)), 0.5, 1e-15);
  EXPECT_THROW(subproblem_gap(rot, 1.0, vec(2, 0)), InputError);
  EXPECT_THROW(subproblem_gap(rot, 0.0, vec(0, 0)), InputError);
  // A point drifted by less than the membership tolerance is re-projected.
  EXPECT_NO_THROW(subproblem_gap(rot, 1.0, vec(1.0 + 1e-11, 0)));
}

TEST(SubproblemGap, MatchesBallClosedForm) {
  const NestedVIProblem p = random_skew_rank_one({10, 0.1, 4});
  Rng rng(11);
  for (int s = 0; s < 200; ++s) {
    const Vector z = sample_member(p.set(), rng);
    const double tau = 1.0 + 10.0 * rng.uniform();
    const Vector phi = tikhonov_map(p, tau, z);
    EXPECT_NEAR(subproblem_gap(p, tau, z), ball_gap_oracle(phi, z, Vector::Zero(10), 1.0), 1e-12);
  }
}

TEST(SubproblemGap, ZeroAtExactSolution) {
  // G = 0, F(x) = x - c with c inside the ball: the subproblem solution is c.
  Vector c(2);
  c << 0.3, -0.2;
  const NestedVIProblem p(AffineMap(Matrix::Zero(2, 2)), AffineMap(Matrix::Identity(2, 2), -c),
                          FeasibleSet::unit_ball(2));
  EXPECT_NEAR(subproblem_gap(p, 3.0, c), 0.0, 1e-9);
}

TEST(NaturalResidual, Examples) {
  const NestedVIProblem rot = rotation2d();
  EXPECT_EQ(natural_residual(rot.lower(), rot.set(), vec(0, 0)), 0.0);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(natural_residual(rot.lower(), rot.set(), vec(1, 0)), vec(r - 1.0, r).norm(), 1e-15);
  EXPECT_NEAR(natural_residual(rot.lower(), rot.set(), vec(1, 0)), 0.7654, 1e-4);
  EXPECT_NEAR(lower_natural_residual(rot, vec(1, 0)), 0.7654, 1e-4);
  Rng rng(1);
  for (int s = 0; s < 100; ++s) {
    Vector x = rng.normal_vector(2);
    x *= (1e-3 + rng.uniform()) / x.norm();
    EXPECT_GT(lower_natural_residual(rot, x), 0.0);
  }
}

TEST(ErrorTranslation, Primal) {
  const ErrorBundle zero = translate_errors(0.0, 10.0, 1.0, 2.0);
  EXPECT_EQ(zero.eps_up, 0.0);
  EXPECT_DOUBLE_EQ(zero.eps_low, 0.2);
  EXPECT_DOUBLE_EQ(translate_errors(1e-2, 10.0, 1.0, 2.0).eps_up, 0.1);
  EXPECT_NEAR(translate_errors(1e-4, 100.0, 0.5, 2.0).eps_low_hat, 0.015, 1e-15);
  EXPECT_THROW(translate_errors(0.1, 0.0, 1.0, 1.0), InputError);
  EXPECT_THROW(translate_errors(-0.1, 1.0, 1.0, 1.0), InputError);
}

TEST(ErrorTranslation, Dual) {
  EXPECT_EQ(translate_errors_dual(0.0, 5.0, 1.0, 2.0).eps_up, 0.0);
  const double ibar = 8.0;
  const ErrorBundle d = translate_errors_dual(1.0 / (ibar * ibar), ibar, 1.0, 2.0);
  EXPECT_DOUBLE_EQ(d.eps_up, 1.0 / ibar);
  // sqrt form: 1 / ibar + H / ibar = (H + 1) / ibar.
  EXPECT_DOUBLE_EQ(d.eps_low_hat, 2.0 / ibar);
}

TEST(DualGapBound, DirectSummation) {
  const StepSizeRule rule = theorem2_step_rule();
  double s1 = 0.0, s2 = 0.0;
  for (int j = 0; j <= 50; ++j) {
    const double g = rule.gamma(j);
    s1 += g;
    s2 += g * g;
  }
  EXPECT_NEAR(dual_gap_bound(50, 2.0, 1.0, 0.5, rule), (4.0 + s2 * 2.25) / (2.0 * s1), 1e-14);
  EXPECT_THROW(dual_gap_bound(0, 2.0, 1.0, 0.5, rule), InputError);
}

TEST(DualGapBound, DecreasesAndStaysBelowAnalyticCap) {
  const StepSizeRule rule = theorem2_step_rule();
  const double D = 2.0, R = 1.0, H = 0.5, eta = 0.01;
  const ComplexityConstants c = complexity_constants(D, R, H, eta);
  double prev = std::numeric_limits<double>::infinity();
  for (std::int64_t k : {100, 1000, 10000}) {
    const double b = dual_gap_bound(k, D, R, H, rule);
    EXPECT_LT(b, prev);
    prev = b;
  }
  for (std::int64_t k : {4, 10, 100, 1000, 10000}) {
    const double kk = static_cast<double>(k);
    const double cap = std::max(std::sqrt(c.c1) / std::sqrt(kk),
                                std::pow(c.c2_eta, (1.0 - 2.0 * eta) / 2.0) / std::pow(kk, (1.0 - 2.0 * eta) / 2.0));
    EXPECT_LE(dual_gap_bound(k, D, R, H, rule), cap) << k;
  }
}

TEST(ResidualGap, Conversions) {
  EXPECT_DOUBLE_EQ(residual_from_gap(0.04), 0.2);
  EXPECT_EQ(gap_from_residual(0.0, 3.0, 4.0), 0.0);
  EXPECT_DOUBLE_EQ(gap_from_residual(0.5, 3.0, 4.0), 3.5);
}

TEST(OptimalityMeasure, Values) {
  EXPECT_DOUBLE_EQ(optimality_measure(0.0, 10.0), 0.1);
  EXPECT_DOUBLE_EQ(optimality_measure(0.01, 100.0), 1.0);
  EXPECT_DOUBLE_EQ(optimality_measure_hd(0.0, 10.0, 0.5, 2.0), 0.1);
  EXPECT_DOUBLE_EQ(optimality_measure_hd(0.0, 10.0, 2.0, 2.0), 0.4);
  EXPECT_THROW(optimality_measure(0.1, 0.0), InputError);
}

TEST(LowerLevelBound, RotationExamples) {
  const NestedVIProblem rot = rotation2d();
  EXPECT_EQ(lower_level_residual_bound(rot, 1.0, vec(0, 0)), 0.0);
  const Vector z = vec(0.6, -0.3);
  EXPECT_NEAR(lower_level_residual_bound(rot, 1e12, z), lower_natural_residual(rot, z), 1e-10);
  Rng rng(21);
  for (double tau : {1.0, 10.0, 100.0})
    for (int s = 0; s < 300; ++s) {
      const Vector x = sample_member(rot.set(), rng);
      EXPECT_LE(lower_natural_residual(rot, x), lower_level_residual_bound(rot, tau, x) + 1e-9);
    }
}

}  // namespace
}  // namespace nvi
