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

#ifndef NESTEDVI_MERIT_HPP_
#define NESTEDVI_MERIT_HPP_

#include <cstdint>

#include "nestedvi/core.hpp"
#include "nestedvi/schedules.hpp"

namespace nvi {

// Membership tolerance for points that should lie in Y (Euclidean distance to
// the projection). Points within tolerance are re-projected.
inline constexpr double kMembershipTol = 1e-9;

// Errors of an approximate subproblem solution and what they imply for the
// nested problem. For the dual variant every field is the dual counterpart.
struct ErrorBundle {
  double eps_sub = 0.0;
  double eps_up = 0.0;       // upper-level error, eps_sub * tau
  double eps_low = 0.0;      // lower-level gap error, eps_sub + H D / tau
  double eps_low_hat = 0.0;  // lower-level natural residual, sqrt(eps_sub) + H / tau
};

// -min_{y in Y} phi^T (y - z) for a given direction phi, via the LMO.
double gap_from_direction(const FeasibleSet& set, const Vector& phi, const Vector& z);

// -min_{y in Y} Phi_tau(z)^T (y - z). Throws InputError if z is farther than
// kMembershipTol from Y.
double subproblem_gap(const NestedVIProblem& problem, double tau, const Vector& z);

// ||P(x - map(x)) - x||.
double natural_residual(const AffineMap& map, const FeasibleSet& set, const Vector& x);

// V(x): natural residual of the lower-level VI(F, Y).
double lower_natural_residual(const NestedVIProblem& problem, const Vector& x);

ErrorBundle translate_errors(double eps_sub, double tau, double H, double D);
ErrorBundle translate_errors_dual(double eps_sub_dual, double tau, double H, double D);

// (D^2 + sum_{j<=k} gamma_j^2 (R + H)^2) / (2 sum_{j<=k} gamma_j), by direct
// summation.
double dual_gap_bound(std::int64_t k, double D, double R, double H, const StepSizeRule& rule);

// Same quantity from running sums.
inline double dual_gap_bound_from_sums(double sum, double sum_sq, double D, double R, double H) {
  return (D * D + sum_sq * (R + H) * (R + H)) / (2.0 * sum);
}

// Gap eps implies natural residual <= sqrt(eps).
double residual_from_gap(double eps);
// Natural residual eps_hat implies gap <= (omega + xi) eps_hat.
double gap_from_residual(double eps_hat, double omega, double xi);

// max{eps_sub tau, eps_sub + 1 / tau}.
double optimality_measure(double eps_sub, double tau);
// max{eps_sub tau, eps_sub + H D / tau}.
double optimality_measure_hd(double eps_sub, double tau, double H, double D);

// (1 / tau) ||G(z)|| + ||P(z - Phi_tau(z)) - z||, an upper bound on V(z).
double lower_level_residual_bound(const NestedVIProblem& problem, double tau, const Vector& z);

}  // namespace nvi

#endif  // NESTEDVI_MERIT_HPP_
