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
#include "nestedvi/schedules.hpp"

namespace nvi {
namespace {

TEST(StepSize, PowerRule) {
  EXPECT_EQ(StepSizeRule(PowerStep{0.5, 0.5}).gamma(0), 1.0);
  EXPECT_EQ(StepSizeRule(PowerStep{1.0, 0.5}).gamma(4), 0.5);
  EXPECT_EQ(theorem2_step_rule().gamma(1), 0.5);
  EXPECT_EQ(StepSizeRule(PowerStep{2.0, 1.0}).gamma(1), 1.0);
  EXPECT_DOUBLE_EQ(StepSizeRule(PowerStep{2.0, 1.0}).gamma(8), 0.25);
  EXPECT_THROW(StepSizeRule(PowerStep{0.0, 0.5}), InputError);
  EXPECT_THROW(StepSizeRule(PowerStep{1.0, 1.5}), InputError);
  EXPECT_THROW(StepSizeRule(PowerStep{1.0, 0.5}).gamma(-1), InputError);
}

TEST(StepSize, RecursiveRuleMatchesHandRecurrence) {
  const StepSizeRule rule(RecursiveStep{1.0, 0.5});
  StepSizeSequence seq(rule);
  double g = 1.0;
  for (int k = 0; k <= 50; ++k) {
    EXPECT_DOUBLE_EQ(rule.gamma(k), g);
    EXPECT_DOUBLE_EQ(seq(k), g);
    g = g * (1.0 - 0.5 * g);
  }
  EXPECT_DOUBLE_EQ(seq(3), rule.gamma(3));
  EXPECT_THROW(StepSizeRule(RecursiveStep{1.0, 1.0}), InputError);
  EXPECT_THROW(StepSizeRule(RecursiveStep{0.0, 0.5}), InputError);
}

TEST(Tikhonov, SchedulesAndProducts) {
  const TikhonovSchedule t2 = Theorem2Schedule{};
  for (std::int64_t i = 1; i <= 1000; ++i) {
    EXPECT_EQ(t2.tau(i), static_cast<double>(i));
    EXPECT_NEAR(t2.epsilon(i) * t2.tau(i), 1.0 / static_cast<double>(i), 1e-15 / static_cast<double>(i));
  }
  EXPECT_EQ(t2.tau(0), 1.0);
  const TikhonovSchedule p = PowerLawSchedule{2.0, 3.0, 1.5};
  EXPECT_DOUBLE_EQ(p.tau(5), 10.0);
  EXPECT_DOUBLE_EQ(p.epsilon(5), 3.0 / std::pow(10.0, 1.5));
  EXPECT_THROW(TikhonovSchedule(PowerLawSchedule{1.0, 1.0, 1.0}), InputError);
  const TikhonovSchedule t3 = Theorem3Schedule{0.25};
  EXPECT_TRUE(t3.is_certificate());
  EXPECT_THROW(t3.tau(1), InputError);
  EXPECT_EQ(t3.certificate_tau(0.5), 6);
}

TEST(Tikhonov, OuterSequenceStrictlyMonotone) {
  const TikhonovSchedule p = PowerLawSchedule{};
  for (std::int64_t i = 1; i < 200; ++i) {
    EXPECT_LT(p.epsilon(i + 1), p.epsilon(i));
    EXPECT_LT(p.tau(i), p.tau(i + 1));
  }
}

double direct_sum(double a, double alpha, std::int64_t K, int power) {
  double s = 0.0;
  for (std::int64_t k = 0; k <= K; ++k) {
    const double g = k == 0 ? 1.0 : std::min(1.0, a / std::pow(static_cast<double>(k), alpha));
    s += power == 1 ? g : g * g;
  }
  return s;
}

TEST(SumBounds, ClosedFormValues) {
  // ceil(1^(1/alpha)) = 1 in all four cases.
  EXPECT_NEAR(gamma_sum_lower_bound(1.0, 0.5, 100), 1.0 + 2.0 * (std::sqrt(101.0) - 1.0), 1e-12);
  EXPECT_NEAR(gamma_sum_lower_bound(1.0, 0.5, 100), 19.0998, 1e-4);
  EXPECT_NEAR(gamma_sum_lower_bound(1.0, 1.0, 10), 1.0 + std::log(11.0), 1e-12);
  EXPECT_NEAR(gamma_sum_lower_bound(1.0, 1.0, 10), 3.3979, 1e-4);
  EXPECT_NEAR(gamma_sq_sum_upper_bound(1.0, 0.5, 100), 2.0 + std::log(100.0), 1e-12);
  EXPECT_NEAR(gamma_sq_sum_upper_bound(1.0, 0.5, 100), 6.6052, 1e-4);
  EXPECT_NEAR(gamma_sq_sum_upper_bound(1.0, 1.0, 10), 2.9, 1e-12);
}

TEST(SumBounds, CutoffEnforced) {
  // a = 2, alpha = 0.5: ceil(2^2) = 4.
  EXPECT_THROW(gamma_sum_lower_bound(2.0, 0.5, 3), InputError);
  EXPECT_NO_THROW(gamma_sum_lower_bound(2.0, 0.5, 4));
  EXPECT_THROW(gamma_sq_sum_upper_bound(2.0, 0.5, 4), InputError);
  EXPECT_NO_THROW(gamma_sq_sum_upper_bound(2.0, 0.5, 5));
}

TEST(SumBounds, HoldAgainstBruteForceOnGrid) {
  for (double a : {0.5, 1.0, 2.0})
    for (double alpha : {0.25, 0.5, 1.0})
      for (std::int64_t K : {100, 10000}) {
        EXPECT_LE(gamma_sum_lower_bound(a, alpha, K), direct_sum(a, alpha, K, 1)) << a << " " << alpha << " " << K;
        EXPECT_GE(gamma_sq_sum_upper_bound(a, alpha, K), direct_sum(a, alpha, K, 2)) << a << " " << alpha << " " << K;
      }
}

TEST(Admissibility, PowerAndRecursive) {
  const auto sqrt_rule = admissibility_check(StepSizeRule(PowerStep{1.0, 0.5}), 1'000'000);
  EXPECT_LT(sqrt_rule.ratio, sqrt_rule.ratio_coarse);
  EXPECT_TRUE(sqrt_rule.admissible);
  const auto harmonic = admissibility_check(StepSizeRule(PowerStep{1.0, 1.0}), 1'000'000);
  EXPECT_GT(harmonic.sum, harmonic.sum_coarse);
  EXPECT_NEAR(harmonic.sum - harmonic.sum_coarse, std::log(10.0), 1e-3);
  const auto rec = admissibility_check(StepSizeRule(RecursiveStep{1.0, 0.5}), 1'000'000);
  EXPECT_TRUE(rec.admissible);
  EXPECT_THROW(admissibility_check(StepSizeRule(PowerStep{}), 999), InputError);
}

TEST(Complexity, Constants) {
  const ComplexityConstants c = complexity_constants(2.0, 1.0, 0.5, 0.01);
  EXPECT_NEAR(c.c1, std::pow(4.0 + 1.25 * 2.25, 2.0), 1e-12);
  EXPECT_NEAR(c.c2_eta, std::pow(2.25 / 0.04, 2.0 / 0.98), 1e-9 * c.c2_eta);
  EXPECT_THROW(complexity_constants(1, 1, 1, 0.5), InputError);
}

TEST(Complexity, Theorem2Bound) {
  EXPECT_EQ(complexity_bound_thm2(0.5, 0.99, 2.0, 1.0, 0.0, 0.5).i_max, 2);
  EXPECT_EQ(complexity_bound_thm2(0.1, 0.1, 2.0, 1.0, 0.5, 0.5).i_max, 15);
  EXPECT_THROW(complexity_bound_thm2(0.1, 0.1, 2.0, 1.0, 0.5, 1.5), InputError);
  // Hand evaluation at I_max = 2, D = R = 1, H = 0, L_phi = 0.5, eta = 0.01.
  const double c1 = std::pow(1.0 + 1.25, 2.0);
  const double p = 1.0 / 0.98;
  const double c2 = std::pow(1.0 / 0.04, 2.0 * p);
  const double first = std::pow(2.0, 8.0) * 16.0 / 0.25 * c1;
  const double second = std::pow(2.0, 8.0 * p) * std::pow(2.0, 4.0 * p) / std::pow(0.5, 2.0 * p) * c2;
  const auto b = complexity_bound_thm2(0.5, 0.99, 1.0, 1.0, 0.0, 0.5);
  EXPECT_NEAR(b.sigma, 2.0 * std::ceil(std::max(first, second)), 1e-9 * b.sigma);
  double prev = 0.0;
  for (double d : {0.8, 0.4, 0.2, 0.1, 0.05}) {
    const double sigma = complexity_bound_thm2(d, 0.5, 2.0, 1.0, 0.5, 0.75).sigma;
    EXPECT_GE(sigma, prev);
    prev = sigma;
  }
}

TEST(Complexity, Theorem3Bound) {
  EXPECT_EQ(complexity_bound_thm3(0.5, 1.0, 1.0, 0.0).i_bar_max, 2);
  EXPECT_EQ(complexity_bound_thm3(0.1, 2.0, 1.0, 0.5).i_bar_max, 15);
  EXPECT_EQ(complexity_bound_thm3(0.25, 2.0, 1.0, 0.5).i_bar_max, 6);
  const auto b = complexity_bound_thm3(0.25, 2.0, 1.0, 0.5);
  const ComplexityConstants c = complexity_constants(2.0, 1.0, 0.5, 0.01);
  EXPECT_NEAR(b.sigma_bar, std::ceil(std::max(std::pow(6.0, 4.0) * c.c1, std::pow(6.0, 4.0 / 0.98) * c.c2_eta)),
              1e-9 * b.sigma_bar);
  for (double d : {0.9, 0.5, 0.25, 0.1})
    for (double H : {0.0, 0.5, 2.0})
      EXPECT_LE(complexity_bound_thm3(d, 2.0, 1.0, H).sigma_bar,
                complexity_bound_thm2(d, d, 2.0, 1.0, H, 0.5).sigma);
}

}  // namespace
}  // namespace nvi
