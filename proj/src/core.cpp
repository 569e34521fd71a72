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

#include "nestedvi/core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace nvi {
namespace {

void require_finite(const Eigen::Ref<const Matrix>& m, const char* what) {
  if (!m.allFinite()) throw InputError(std::string(what) + " has non-finite entries");
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Vector project_simplex(const Vector& x, double scale) {
  // Sort-based projection: find the threshold theta with sum(max(x - theta, 0)) = scale.
  std::vector<double> sorted(x.data(), x.data() + x.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    cumulative += sorted[j];
    const double candidate = (cumulative - scale) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) theta = candidate;
  }
  return (x.array() - theta).max(0.0).matrix();
}

}  // namespace

AffineMap::AffineMap(Matrix matrix, Vector offset)
    : matrix_(std::move(matrix)), offset_(std::move(offset)) {
  if (matrix_.rows() != matrix_.cols())
    throw InputError("affine map matrix must be square");
  if (matrix_.rows() != offset_.size())
    throw InputError("affine map offset length does not match matrix");
  if (offset_.size() < 1) throw InputError("affine map dimension must be >= 1");
  require_finite(matrix_, "affine map matrix");
  require_finite(offset_, "affine map offset");
}

AffineMap::AffineMap(Matrix matrix)
    : AffineMap(matrix, Vector::Zero(matrix.rows())) {}

Vector AffineMap::evaluate(const Vector& x) const {
  if (x.size() != dim()) throw InputError("dimension mismatch in map evaluation");
  return matrix_ * x + offset_;
}

AffineMap AffineMap::scaled(double factor) const {
  if (!(factor > 0.0)) throw InputError("scale factor must be positive");
  return AffineMap(factor * matrix_, factor * offset_);
}

FeasibleSet::FeasibleSet(Ball ball) : set_(std::move(ball)) {
  const auto& b = std::get<Ball>(set_);
  if (b.center.size() < 1) throw InputError("ball dimension must be >= 1");
  require_finite(b.center, "ball center");
  if (!(b.radius > 0.0) || !std::isfinite(b.radius))
    throw InputError("ball radius must be positive and finite");
}

FeasibleSet::FeasibleSet(Box box) : set_(std::move(box)) {
  const auto& b = std::get<Box>(set_);
  if (b.lower.size() < 1 || b.lower.size() != b.upper.size())
    throw InputError("box bounds must be nonempty and of equal length");
  require_finite(b.lower, "box lower bound");
  require_finite(b.upper, "box upper bound");
  if ((b.lower.array() > b.upper.array()).any())
    throw InputError("box lower bound exceeds upper bound");
}

FeasibleSet::FeasibleSet(Simplex simplex) : set_(simplex) {
  if (simplex.n < 1) throw InputError("simplex dimension must be >= 1");
  if (!(simplex.scale > 0.0) || !std::isfinite(simplex.scale))
    throw InputError("simplex scale must be positive and finite");
}

FeasibleSet FeasibleSet::unit_ball(Eigen::Index n) {
  return FeasibleSet(Ball{Vector::Zero(n), 1.0});
}

Eigen::Index FeasibleSet::dim() const {
  return std::visit(Overloaded{[](const Ball& b) { return b.center.size(); },
                               [](const Box& b) { return b.lower.size(); },
                               [](const Simplex& s) { return s.n; }},
                    set_);
}

void FeasibleSet::check_dim(const Vector& x) const {
  if (x.size() != dim()) throw InputError("dimension mismatch with feasible set");
}

Vector FeasibleSet::project(const Vector& x) const {
  check_dim(x);
  return std::visit(
      Overloaded{[&](const Ball& b) -> Vector {
                   const Vector d = x - b.center;
                   const double norm = d.norm();
                   if (norm <= b.radius) return x;
                   return b.center + (b.radius / norm) * d;
                 },
                 [&](const Box& b) -> Vector {
                   return x.cwiseMax(b.lower).cwiseMin(b.upper);
                 },
                 [&](const Simplex& s) -> Vector { return project_simplex(x, s.scale); }},
      set_);
}

Vector FeasibleSet::lmo(const Vector& g) const {
  check_dim(g);
  return std::visit(
      Overloaded{[&](const Ball& b) -> Vector {
                   const double norm = g.norm();
                   if (norm == 0.0) return b.center;
                   return b.center - (b.radius / norm) * g;
                 },
                 [&](const Box& b) -> Vector {
                   Vector y(g.size());
                   for (Eigen::Index j = 0; j < g.size(); ++j)
                     y[j] = g[j] > 0.0 ? b.lower[j] : b.upper[j];
                   return y;
                 },
                 [&](const Simplex& s) -> Vector {
                   Eigen::Index best = 0;
                   for (Eigen::Index j = 1; j < g.size(); ++j)
                     if (g[j] < g[best]) best = j;
                   Vector y = Vector::Zero(g.size());
                   y[best] = s.scale;
                   return y;
                 }},
      set_);
}

double FeasibleSet::diameter() const {
  return std::visit(
      Overloaded{[](const Ball& b) { return 2.0 * b.radius; },
                 [](const Box& b) { return (b.upper - b.lower).norm(); },
                 [](const Simplex& s) { return s.n >= 2 ? s.scale * std::sqrt(2.0) : 0.0; }},
      set_);
}

double FeasibleSet::max_norm() const {
  return std::visit(
      Overloaded{[](const Ball& b) { return b.center.norm() + b.radius; },
                 [](const Box& b) { return b.lower.cwiseAbs().cwiseMax(b.upper.cwiseAbs()).norm(); },
                 [](const Simplex& s) { return s.scale; }},
      set_);
}

bool FeasibleSet::contains(const Vector& x, double tol) const {
  if (x.size() != dim() || !x.allFinite()) return false;
  return (project(x) - x).norm() <= tol;
}

Vector FeasibleSet::center() const {
  return std::visit(
      Overloaded{[](const Ball& b) -> Vector { return b.center; },
                 [](const Box& b) -> Vector { return 0.5 * (b.lower + b.upper); },
                 [](const Simplex& s) -> Vector {
                   return Vector::Constant(s.n, s.scale / static_cast<double>(s.n));
                 }},
      set_);
}

double spectral_norm(const Matrix& matrix) {
  if (matrix.rows() != matrix.cols()) throw InputError("spectral_norm expects a square matrix");
  if (matrix.size() == 0) return 0.0;
  constexpr double kRelTol = 1e-10;
  constexpr int kMaxIter = 10000;
  Vector v = Vector::Ones(matrix.cols()).normalized();
  double eigenvalue = 0.0;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    const Vector w = matrix.transpose() * (matrix * v);
    const double next = w.norm();
    if (next == 0.0) return std::sqrt(eigenvalue);
    v = w / next;
    const bool converged = std::abs(next - eigenvalue) <= kRelTol * next;
    eigenvalue = next;
    if (converged) break;
  }
  return std::sqrt(eigenvalue);
}

double monotonicity_defect(const Matrix& matrix) {
  if (matrix.rows() != matrix.cols())
    throw InputError("monotonicity_defect expects a square matrix");
  const Matrix sym = 0.5 * (matrix + matrix.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double map_norm_bound(const AffineMap& map, const FeasibleSet& set) {
  if (map.dim() != set.dim()) throw InputError("dimension mismatch in map_norm_bound");
  const double sigma = spectral_norm(map.matrix());
  if (const auto* ball = std::get_if<Ball>(&set.variant()))
    return map.evaluate(ball->center).norm() + ball->radius * sigma;
  return sigma * set.max_norm() + map.offset().norm();
}

NestedVIProblem::NestedVIProblem(AffineMap upper, AffineMap lower, FeasibleSet set)
    : upper_(std::move(upper)), lower_(std::move(lower)), set_(std::move(set)) {
  if (upper_.dim() != lower_.dim() || upper_.dim() != set_.dim())
    throw InputError("upper map, lower map and feasible set dimensions differ");
  constants_.L_G = spectral_norm(upper_.matrix());
  constants_.L_F = spectral_norm(lower_.matrix());
  constants_.H = map_norm_bound(upper_, set_);
  constants_.R = map_norm_bound(lower_, set_);
  constants_.D = set_.diameter();
  upper_defect_ = monotonicity_defect(upper_.matrix());
  lower_defect_ = monotonicity_defect(lower_.matrix());
}

void NestedVIProblem::set_known_solution(Vector solution) {
  if (solution.size() != dim()) throw InputError("known solution has wrong dimension");
  known_solution_ = std::move(solution);
}

NestedVIProblem NestedVIProblem::scaled(double factor) const {
  NestedVIProblem out(upper_.scaled(factor), lower_.scaled(factor), set_);
  out.known_solution_ = known_solution_;
  return out;
}

Vector tikhonov_map(const NestedVIProblem& problem, double tau, const Vector& x) {
  if (!(tau > 0.0)) throw InputError("tau must be positive");
  return problem.lower().evaluate(x) + problem.upper().evaluate(x) / tau;
}

AffineMap tikhonov_affine(const NestedVIProblem& problem, double tau) {
  if (!(tau > 0.0)) throw InputError("tau must be positive");
  return AffineMap(problem.lower().matrix() + problem.upper().matrix() / tau,
                   problem.lower().offset() + problem.upper().offset() / tau);
}

}  // namespace nvi
