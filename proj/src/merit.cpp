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

#include "nestedvi/merit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nvi {
namespace {

void require_tau(double tau) {
  if (!(tau > 0.0)) throw InputError("tau must be positive");
}

Vector member_or_throw(const FeasibleSet& set, const Vector& z) {
  if (z.size() != set.dim()) throw InputError("dimension mismatch with feasible set");
  Vector p = set.project(z);
  const double dist = (p - z).norm();
  if (!(dist <= kMembershipTol))
    throw InputError("point lies outside the feasible set (distance " + std::to_string(dist) + ")");
  return p;
}

}  // namespace

double gap_from_direction(const FeasibleSet& set, const Vector& phi, const Vector& z) {
  const Vector y = set.lmo(phi);
  return -phi.dot(y - z);
}

double subproblem_gap(const NestedVIProblem& problem, double tau, const Vector& z) {
  require_tau(tau);
  const Vector member = member_or_throw(problem.set(), z);
  return gap_from_direction(problem.set(), tikhonov_map(problem, tau, member), member);
}

double natural_residual(const AffineMap& map, const FeasibleSet& set, const Vector& x) {
  if (x.size() != set.dim() || map.dim() != set.dim())
    throw InputError("dimension mismatch in natural_residual");
  return (set.project(x - map.evaluate(x)) - x).norm();
}

double lower_natural_residual(const NestedVIProblem& problem, const Vector& x) {
  return natural_residual(problem.lower(), problem.set(), x);
}

ErrorBundle translate_errors(double eps_sub, double tau, double H, double D) {
  require_tau(tau);
  if (!(eps_sub >= 0.0)) throw InputError("eps_sub must be nonnegative");
  ErrorBundle e;
  e.eps_sub = eps_sub;
  e.eps_up = eps_sub * tau;
  e.eps_low = eps_sub + H * D / tau;
  e.eps_low_hat = std::sqrt(eps_sub) + H / tau;
  return e;
}

ErrorBundle translate_errors_dual(double eps_sub_dual, double tau, double H, double D) {
  return translate_errors(eps_sub_dual, tau, H, D);
}

double dual_gap_bound(std::int64_t k, double D, double R, double H, const StepSizeRule& rule) {
  if (k < 1) throw InputError("dual_gap_bound requires k >= 1");
  StepSizeSequence gamma(rule);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::int64_t j = 0; j <= k; ++j) {
    const double g = gamma(j);
    sum += g;
    sum_sq += g * g;
  }
  return dual_gap_bound_from_sums(sum, sum_sq, D, R, H);
}

double residual_from_gap(double eps) {
  if (!(eps >= 0.0)) throw InputError("gap must be nonnegative");
  return std::sqrt(eps);
}

double gap_from_residual(double eps_hat, double omega, double xi) {
  if (!(eps_hat >= 0.0) || !(omega >= 0.0) || !(xi >= 0.0))
    throw InputError("gap_from_residual arguments must be nonnegative");
  return (omega + xi) * eps_hat;
}

double optimality_measure(double eps_sub, double tau) {
  require_tau(tau);
  if (!(eps_sub >= 0.0)) throw InputError("eps_sub must be nonnegative");
  return std::max(eps_sub * tau, eps_sub + 1.0 / tau);
}

double optimality_measure_hd(double eps_sub, double tau, double H, double D) {
  require_tau(tau);
  if (!(eps_sub >= 0.0)) throw InputError("eps_sub must be nonnegative");
  return std::max(eps_sub * tau, eps_sub + H * D / tau);
}

double lower_level_residual_bound(const NestedVIProblem& problem, double tau, const Vector& z) {
  require_tau(tau);
  const Vector phi = tikhonov_map(problem, tau, z);
  return problem.upper().evaluate(z).norm() / tau + (problem.set().project(z - phi) - z).norm();
}

}  // namespace nvi
