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

#ifndef NESTEDVI_CORE_HPP_
#define NESTEDVI_CORE_HPP_

#include <Eigen/Dense>

#include <optional>
#include <variant>

#include "nestedvi/error.hpp"

namespace nvi {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// x -> matrix * x + offset, with a square dense matrix.
class AffineMap {
 public:
  AffineMap(Matrix matrix, Vector offset);
  // Zero offset.
  explicit AffineMap(Matrix matrix);

  Eigen::Index dim() const { return offset_.size(); }
  const Matrix& matrix() const { return matrix_; }
  const Vector& offset() const { return offset_; }

  Vector evaluate(const Vector& x) const;

  // Same map multiplied by a positive factor.
  AffineMap scaled(double factor) const;

 private:
  Matrix matrix_;
  Vector offset_;
};

struct Ball {
  Vector center;
  double radius = 1.0;
};

// Componentwise lower <= y <= upper.
struct Box {
  Vector lower;
  Vector upper;
};

// {y >= 0, sum(y) = scale} in dimension n.
struct Simplex {
  Eigen::Index n = 1;
  double scale = 1.0;
};

// Nonempty convex compact set with closed-form projection and linear
// minimization oracle.
class FeasibleSet {
 public:
  using Variant = std::variant<Ball, Box, Simplex>;

  FeasibleSet(Ball ball);
  FeasibleSet(Box box);
  FeasibleSet(Simplex simplex);

  static FeasibleSet unit_ball(Eigen::Index n);

  const Variant& variant() const { return set_; }
  Eigen::Index dim() const;

  // Euclidean projection.
  Vector project(const Vector& x) const;
  // Exact minimizer of g^T y over the set. Ties: ball with g = 0 returns the
  // center; simplex returns the lowest-index vertex.
  Vector lmo(const Vector& g) const;
  // Exact diameter max ||v - y||.
  double diameter() const;
  // max ||y|| over the set, attained at a closed-form point.
  double max_norm() const;
  // Distance from x to its projection is at most tol.
  bool contains(const Vector& x, double tol = 1e-9) const;
  // A point of the set suitable as a reference (center / midpoint / barycenter).
  Vector center() const;

 private:
  void check_dim(const Vector& x) const;

  Variant set_;
};

// Largest singular value via power iteration on M^T M from the normalized
// all-ones vector; relative tolerance 1e-10, at most 1e4 iterations.
double spectral_norm(const Matrix& matrix);

// Minimum eigenvalue of (M + M^T) / 2. Nonnegative iff the affine map is
// monotone.
double monotonicity_defect(const Matrix& matrix);

// Upper bound on max_{y in set} ||map(y)||.
double map_norm_bound(const AffineMap& map, const FeasibleSet& set);

struct ProblemConstants {
  double H = 0.0;    // >= max ||G(y)|| over Y
  double R = 0.0;    // >= max ||F(y)|| over Y
  double D = 0.0;    // >= diameter of Y
  double L_F = 0.0;  // Lipschitz constant of F
  double L_G = 0.0;  // Lipschitz constant of G

  double L_phi() const { return L_F + L_G; }
};

// VI(G, SOL(F, Y)) with affine upper map G and lower map F.
class NestedVIProblem {
 public:
  // Computes the constants from the data.
  NestedVIProblem(AffineMap upper, AffineMap lower, FeasibleSet set);

  const AffineMap& upper() const { return upper_; }
  const AffineMap& lower() const { return lower_; }
  const FeasibleSet& set() const { return set_; }
  const ProblemConstants& constants() const { return constants_; }
  Eigen::Index dim() const { return set_.dim(); }

  double upper_defect() const { return upper_defect_; }
  double lower_defect() const { return lower_defect_; }

  const std::optional<Vector>& known_solution() const { return known_solution_; }
  void set_known_solution(Vector solution);

  // Both maps multiplied by factor > 0. SOL(F, Y) and the nested solution set
  // are unchanged.
  NestedVIProblem scaled(double factor) const;

 private:
  AffineMap upper_;
  AffineMap lower_;
  FeasibleSet set_;
  ProblemConstants constants_;
  double upper_defect_ = 0.0;
  double lower_defect_ = 0.0;
  std::optional<Vector> known_solution_;
};

// Phi_tau(x) = F(x) + G(x) / tau.
Vector tikhonov_map(const NestedVIProblem& problem, double tau, const Vector& x);

// Phi_tau as an explicit affine map; cached by solvers between tau changes.
AffineMap tikhonov_affine(const NestedVIProblem& problem, double tau);

}  // namespace nvi

#endif  // NESTEDVI_CORE_HPP_
