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

#ifndef NESTEDVI_SCHEDULES_HPP_
#define NESTEDVI_SCHEDULES_HPP_

#include <cstdint>
#include <variant>
#include <vector>

namespace nvi {

// gamma_k = min{1, a / k^alpha}; k = 0 gives 1.
struct PowerStep {
  double a = 1.0;
  double alpha = 0.5;
};

// gamma_k = gamma_{k-1} (1 - theta gamma_{k-1}), gamma_0 given.
struct RecursiveStep {
  double gamma0 = 1.0;
  double theta = 0.5;
};

class StepSizeRule {
 public:
  using Variant = std::variant<PowerStep, RecursiveStep>;

  StepSizeRule(PowerStep rule);
  StepSizeRule(RecursiveStep rule);

  const Variant& variant() const { return rule_; }

  // k-th step size, in (0, 1]. The recursive rule is evaluated by forward
  // recurrence from gamma_0 on every call; use StepSizeSequence inside loops.
  double gamma(std::int64_t k) const;

 private:
  Variant rule_;
};

// gamma_k = min{1, 1 / (2 sqrt(k))}, the rule assumed by both complexity bounds.
StepSizeRule theorem2_step_rule();

// Per-solve memoizing evaluator. Not shared between threads.
class StepSizeSequence {
 public:
  explicit StepSizeSequence(StepSizeRule rule);

  double operator()(std::int64_t k);
  const StepSizeRule& rule() const { return rule_; }

 private:
  StepSizeRule rule_;
  std::vector<double> memo_;
};

// tau(i) = max{1, slope * i}, epsilon(i) = c / tau(i)^beta.
struct PowerLawSchedule {
  double slope = 1.0;
  double c = 1.0;
  double beta = 2.0;
};

// tau(i) = max{1, i}, epsilon(i) = 1 / tau(i)^2.
struct Theorem2Schedule {};

// Fixed tau = ceil((H + 1) / delta); accuracy certified through the dual gap.
struct Theorem3Schedule {
  double delta = 0.1;
};

class TikhonovSchedule {
 public:
  using Variant = std::variant<PowerLawSchedule, Theorem2Schedule, Theorem3Schedule>;

  TikhonovSchedule(PowerLawSchedule s);
  TikhonovSchedule(Theorem2Schedule s);
  TikhonovSchedule(Theorem3Schedule s);

  const Variant& variant() const { return schedule_; }
  bool is_certificate() const { return std::holds_alternative<Theorem3Schedule>(schedule_); }

  // Outer index i >= 0. Not defined for Theorem3Schedule, whose tau
  // depends on H; see certificate_tau().
  double tau(std::int64_t i) const;
  double epsilon(std::int64_t i) const;

  // ceil((H + 1) / delta) for Theorem3Schedule.
  std::int64_t certificate_tau(double H) const;

 private:
  Variant schedule_;
};

// Lower bound on sum_{k=0}^K gamma_k for the power rule; requires
// K >= ceil(a^(1/alpha)).
double gamma_sum_lower_bound(double a, double alpha, std::int64_t K);

// Upper bound on sum_{k=0}^K gamma_k^2 for the power rule; requires
// K >= ceil(a^(1/alpha)) + 1.
double gamma_sq_sum_upper_bound(double a, double alpha, std::int64_t K);

struct AdmissibilityReport {
  std::int64_t k_probe = 0;
  double sum = 0.0;             // S1(K)
  double sum_coarse = 0.0;      // S1(K / 10)
  double ratio = 0.0;           // rho(K) = sum gamma^2 / sum gamma
  double ratio_coarse = 0.0;    // rho(K / 10)
  bool admissible = false;
};

// Empirical check of sum gamma = inf and sum gamma^2 / sum gamma -> 0 from
// partial sums at K and K / 10.
AdmissibilityReport admissibility_check(const StepSizeRule& rule, std::int64_t k_probe);

// Default for the small exponent in the complexity constants.
inline constexpr double kDefaultEta = 0.01;

struct ComplexityConstants {
  double c1 = 0.0;
  double c2_eta = 0.0;
};

// C1 = (D^2 + 5/4 (R + H)^2)^2, C2 = ((R + H)^2 / (4 eta))^(2 / (1 - 2 eta)).
ComplexityConstants complexity_constants(double D, double R, double H, double eta);

struct Theorem2Bound {
  std::int64_t i_max = 0;
  double sigma = 0.0;  // may exceed the int64 range
};

Theorem2Bound complexity_bound_thm2(double delta_up, double delta_low_hat, double D,
                                    double R, double H, double L_phi,
                                    double eta = kDefaultEta);

struct Theorem3Bound {
  std::int64_t i_bar_max = 0;
  double sigma_bar = 0.0;
};

Theorem3Bound complexity_bound_thm3(double delta, double D, double R, double H,
                                    double eta = kDefaultEta);

}  // namespace nvi

#endif  // NESTEDVI_SCHEDULES_HPP_
