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

#include "nestedvi/schedules.hpp"

#include <algorithm>
#include <cmath>

#include "nestedvi/error.hpp"

namespace nvi {
namespace {

void validate(const PowerStep& r) {
  if (!(r.a > 0.0) || !std::isfinite(r.a)) throw InputError("power step: a must be positive");
  if (!(r.alpha > 0.0 && r.alpha <= 1.0)) throw InputError("power step: alpha must be in (0,1]");
}

void validate(const RecursiveStep& r) {
  if (!(r.gamma0 > 0.0 && r.gamma0 <= 1.0))
    throw InputError("recursive step: gamma0 must be in (0,1]");
  if (!(r.theta > 0.0 && r.theta < 1.0)) throw InputError("recursive step: theta must be in (0,1)");
}

double power_gamma(const PowerStep& r, std::int64_t k) {
  if (k <= 0) return 1.0;
  return std::min(1.0, r.a / std::pow(static_cast<double>(k), r.alpha));
}

double next_recursive(const RecursiveStep& r, double prev) { return prev * (1.0 - r.theta * prev); }

// Ceiling that absorbs representation error of decimal inputs, so that
// 1.5 / 0.1 = 15.000000000000002 rounds to 15.
double decimal_ceil(double x) { return std::ceil(x - 1e-12 * std::max(1.0, std::abs(x))); }

// ceil(a^(1/alpha)), the first index from which gamma_k = a / k^alpha.
std::int64_t power_cutoff(double a, double alpha) {
  return static_cast<std::int64_t>(decimal_ceil(std::pow(a, 1.0 / alpha)));
}

}  // namespace

StepSizeRule::StepSizeRule(PowerStep rule) : rule_(rule) { validate(rule); }
StepSizeRule::StepSizeRule(RecursiveStep rule) : rule_(rule) { validate(rule); }

double StepSizeRule::gamma(std::int64_t k) const {
  if (k < 0) throw InputError("step index must be nonnegative");
  if (const auto* p = std::get_if<PowerStep>(&rule_)) return power_gamma(*p, k);
  const auto& r = std::get<RecursiveStep>(rule_);
  double g = r.gamma0;
  for (std::int64_t j = 1; j <= k; ++j) g = next_recursive(r, g);
  return g;
}

StepSizeRule theorem2_step_rule() { return StepSizeRule(PowerStep{0.5, 0.5}); }

StepSizeSequence::StepSizeSequence(StepSizeRule rule) : rule_(std::move(rule)) {}

double StepSizeSequence::operator()(std::int64_t k) {
  if (k < 0) throw InputError("step index must be nonnegative");
  const auto* r = std::get_if<RecursiveStep>(&rule_.variant());
  if (r == nullptr) return rule_.gamma(k);
  if (memo_.empty()) memo_.push_back(r->gamma0);
  while (static_cast<std::int64_t>(memo_.size()) <= k)
    memo_.push_back(next_recursive(*r, memo_.back()));
  return memo_[static_cast<std::size_t>(k)];
}

TikhonovSchedule::TikhonovSchedule(PowerLawSchedule s) : schedule_(s) {
  if (!(s.slope > 0.0)) throw InputError("powerlaw schedule: slope must be positive");
  if (!(s.c > 0.0)) throw InputError("powerlaw schedule: c must be positive");
  if (!(s.beta > 1.0)) throw InputError("powerlaw schedule: beta must exceed 1");
}

TikhonovSchedule::TikhonovSchedule(Theorem2Schedule s) : schedule_(s) {}

TikhonovSchedule::TikhonovSchedule(Theorem3Schedule s) : schedule_(s) {
  if (!(s.delta > 0.0 && s.delta < 1.0)) throw InputError("theorem3 schedule: delta must be in (0,1)");
}

double TikhonovSchedule::tau(std::int64_t i) const {
  if (i < 0) throw InputError("outer index must be nonnegative");
  if (const auto* p = std::get_if<PowerLawSchedule>(&schedule_))
    return std::max(1.0, p->slope * static_cast<double>(i));
  if (std::holds_alternative<Theorem2Schedule>(schedule_))
    return std::max(1.0, static_cast<double>(i));
  throw InputError("theorem3 schedule has no outer tau sequence; use certificate_tau");
}

double TikhonovSchedule::epsilon(std::int64_t i) const {
  const double t = tau(i);
  if (const auto* p = std::get_if<PowerLawSchedule>(&schedule_)) return p->c / std::pow(t, p->beta);
  return 1.0 / (t * t);
}

std::int64_t TikhonovSchedule::certificate_tau(double H) const {
  const auto* s = std::get_if<Theorem3Schedule>(&schedule_);
  if (s == nullptr) throw InputError("certificate_tau requires the theorem3 schedule");
  return complexity_bound_thm3(s->delta, 0.0, 0.0, H).i_bar_max;
}

double gamma_sum_lower_bound(double a, double alpha, std::int64_t K) {
  validate(PowerStep{a, alpha});
  const std::int64_t cutoff = power_cutoff(a, alpha);
  if (K < cutoff) throw InputError("gamma_sum_lower_bound: K below ceil(a^(1/alpha))");
  const double c = static_cast<double>(cutoff);
  const double k1 = static_cast<double>(K) + 1.0;
  if (alpha == 1.0) return c + a * std::log(k1 / c);
  return c + a / (1.0 - alpha) * (std::pow(k1, 1.0 - alpha) - std::pow(c, 1.0 - alpha));
}

double gamma_sq_sum_upper_bound(double a, double alpha, std::int64_t K) {
  validate(PowerStep{a, alpha});
  const std::int64_t cutoff = power_cutoff(a, alpha);
  if (K < cutoff + 1) throw InputError("gamma_sq_sum_upper_bound: K below ceil(a^(1/alpha)) + 1");
  const double c = static_cast<double>(cutoff);
  const double k = static_cast<double>(K);
  const double head = c + a * a / std::pow(c, 2.0 * alpha);
  if (alpha == 0.5) return head + a * a * std::log(k / c);
  return head + a * a / (1.0 - 2.0 * alpha) * (std::pow(k, 1.0 - 2.0 * alpha) - std::pow(c, 1.0 - 2.0 * alpha));
}

AdmissibilityReport admissibility_check(const StepSizeRule& rule, std::int64_t k_probe) {
  if (k_probe < 1000) throw InputError("admissibility_check: k_probe must be >= 1000");
  AdmissibilityReport report;
  report.k_probe = k_probe;
  const std::int64_t coarse = k_probe / 10;
  StepSizeSequence seq(rule);
  double s1 = 0.0;
  double s2 = 0.0;
  for (std::int64_t k = 0; k <= k_probe; ++k) {
    const double g = seq(k);
    s1 += g;
    s2 += g * g;
    if (k == coarse) {
      report.sum_coarse = s1;
      report.ratio_coarse = s2 / s1;
    }
  }
  report.sum = s1;
  report.ratio = s2 / s1;
  report.admissible = report.sum > report.sum_coarse && report.ratio < report.ratio_coarse;
  return report;
}

ComplexityConstants complexity_constants(double D, double R, double H, double eta) {
  if (!(eta > 0.0 && eta < 0.5)) throw InputError("eta must be in (0, 0.5)");
  const double rh2 = (R + H) * (R + H);
  ComplexityConstants c;
  c.c1 = std::pow(D * D + 1.25 * rh2, 2.0);
  c.c2_eta = std::pow(rh2 / (4.0 * eta), 2.0 / (1.0 - 2.0 * eta));
  return c;
}

Theorem2Bound complexity_bound_thm2(double delta_up, double delta_low_hat, double D, double R,
                                    double H, double L_phi, double eta) {
  if (!(delta_up > 0.0 && delta_up < 1.0)) throw InputError("delta_up must be in (0,1)");
  if (!(delta_low_hat > 0.0 && delta_low_hat < 1.0))
    throw InputError("delta_low_hat must be in (0,1)");
  if (!(L_phi >= 0.0 && L_phi < 1.0))
    throw InputError("complexity_bound_thm2 requires L_phi < 1; normalize the maps first");
  const ComplexityConstants c = complexity_constants(D, R, H, eta);
  Theorem2Bound out;
  const double i_max = decimal_ceil(std::max(1.0 / delta_up, (H + 1.0) / delta_low_hat));
  out.i_max = static_cast<std::int64_t>(i_max);
  const double p = 1.0 / (1.0 - 2.0 * eta);
  const double dr = D + R;
  const double slack = 1.0 - L_phi;
  const double first = std::pow(i_max, 8.0) * std::pow(dr, 4.0) / (slack * slack) * c.c1;
  const double second = std::pow(i_max, 8.0 * p) * std::pow(dr, 4.0 * p) /
                        std::pow(slack, 2.0 * p) * c.c2_eta;
  out.sigma = i_max * std::ceil(std::max(first, second));
  return out;
}

Theorem3Bound complexity_bound_thm3(double delta, double D, double R, double H, double eta) {
  if (!(delta > 0.0 && delta < 1.0)) throw InputError("delta must be in (0,1)");
  const ComplexityConstants c = complexity_constants(D, R, H, eta);
  Theorem3Bound out;
  const double i_bar = decimal_ceil((H + 1.0) / delta);
  out.i_bar_max = static_cast<std::int64_t>(i_bar);
  const double p = 1.0 / (1.0 - 2.0 * eta);
  out.sigma_bar = std::ceil(std::max(std::pow(i_bar, 4.0) * c.c1, std::pow(i_bar, 4.0 * p) * c.c2_eta));
  return out;
}

}  // namespace nvi
