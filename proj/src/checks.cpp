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

#include "nestedvi/checks.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

#include "nestedvi/merit.hpp"
#include "nestedvi/problems.hpp"
#include "nestedvi/random.hpp"
#include "nestedvi/schedules.hpp"
#include "nestedvi/solvers.hpp"

namespace nvi::checks {
namespace {

constexpr int kSamples = 1000;

class Tally {
 public:
  explicit Tally(std::string name) { result_.name = std::move(name); }

  // Counts one sample; the message is built only for the first failure.
  template <class MessageFn>
  void expect(bool ok, MessageFn&& message) {
    ++result_.samples;
    if (ok) return;
    if (result_.failures == 0) result_.first_failure = message();
    ++result_.failures;
  }

  CheckResult take() { return std::move(result_); }

 private:
  CheckResult result_;
};

std::vector<FeasibleSet> test_sets() {
  Vector c5(5);
  c5 << 1.0, -1.0, 0.5, 0.0, 2.0;
  Vector lo(3), hi(3);
  lo << -1.0, 0.0, -3.0;
  hi << 2.0, 1.0, -2.0;
  return {FeasibleSet::unit_ball(2), FeasibleSet(Ball{c5, 2.0}), FeasibleSet(Box{lo, hi}),
          FeasibleSet(Simplex{4, 2.0}), FeasibleSet(Simplex{2, 1.0})};
}

std::string set_name(const FeasibleSet& set) {
  const char* kind = std::holds_alternative<Ball>(set.variant())  ? "ball"
                     : std::holds_alternative<Box>(set.variant()) ? "box"
                                                                  : "simplex";
  return fmt::format("{}(n={})", kind, set.dim());
}

Vector wide_point(const FeasibleSet& set, Rng& rng) {
  return set.center() + (1.5 * set.diameter() + 1.0) * rng.normal_vector(set.dim());
}

CheckResult projection_idempotence(const std::vector<FeasibleSet>& sets, const Projector& proj,
                                   Rng& rng) {
  Tally t("projection idempotence");
  for (const auto& set : sets)
    for (int s = 0; s < kSamples; ++s) {
      const Vector p = proj(set, wide_point(set, rng));
      const double err = (proj(set, p) - p).norm();
      t.expect(err <= 1e-12 * std::max(1.0, p.norm()),
               [&] { return fmt::format("{}: |P(P(x)) - P(x)| = {:.3e}", set_name(set), err); });
    }
  return t.take();
}

CheckResult projection_characterization(const std::vector<FeasibleSet>& sets,
                                        const Projector& proj, Rng& rng) {
  Tally t("projection characterization");
  for (const auto& set : sets) {
    std::vector<Vector> members;
    members.reserve(kSamples);
    for (int s = 0; s < kSamples; ++s) members.push_back(sample_member(set, rng));
    for (int s = 0; s < kSamples; ++s) {
      const Vector x = wide_point(set, rng);
      const Vector p = proj(set, x);
      const double dist = (set.project(p) - p).norm();
      t.expect(dist <= 1e-9, [&] {
        return fmt::format("{}: projection lies {:.3e} outside the set", set_name(set), dist);
      });
      double worst = -std::numeric_limits<double>::infinity();
      for (const auto& y : members) worst = std::max(worst, (x - p).dot(y - p));
      t.expect(worst <= 1e-9, [&] {
        return fmt::format("{}: (x - P(x))^T (y - P(x)) = {:.3e} > 0", set_name(set), worst);
      });
    }
  }
  return t.take();
}

CheckResult projection_nonexpansive(const std::vector<FeasibleSet>& sets, const Projector& proj,
                                    Rng& rng) {
  Tally t("projection nonexpansiveness");
  for (const auto& set : sets)
    for (int s = 0; s < kSamples; ++s) {
      const Vector x = wide_point(set, rng);
      const Vector y = wide_point(set, rng);
      const double lhs = (proj(set, x) - proj(set, y)).norm();
      const double rhs = (x - y).norm();
      t.expect(lhs <= rhs + 1e-12, [&] {
        return fmt::format("{}: |P(x) - P(y)| = {:.6e} > |x - y| = {:.6e}", set_name(set), lhs, rhs);
      });
    }
  return t.take();
}

CheckResult lmo_optimality(const std::vector<FeasibleSet>& sets, Rng& rng) {
  Tally t("lmo optimality");
  for (const auto& set : sets) {
    std::vector<Vector> members;
    for (int s = 0; s < kSamples; ++s) members.push_back(sample_member(set, rng));
    for (int s = 0; s < 100; ++s) {
      const Vector g = rng.normal_vector(set.dim());
      const Vector best = set.lmo(g);
      t.expect(set.contains(best, 1e-12), [&] { return set_name(set) + ": lmo output not in set"; });
      const double value = g.dot(best);
      for (const auto& y : members) {
        const double other = g.dot(y);
        t.expect(value <= other + 1e-9, [&] {
          return fmt::format("{}: g^T lmo = {:.6e} > g^T y = {:.6e}", set_name(set), value, other);
        });
      }
    }
  }
  return t.take();
}

// Discretized 2-D sets with 10^4 candidate points each.
CheckResult lmo_brute_force(Rng& rng) {
  Tally t("lmo brute force 2-D");
  constexpr int kGrid = 100;
  const double pi = std::acos(-1.0);
  std::vector<std::pair<FeasibleSet, std::vector<Vector>>> cases;

  std::vector<Vector> disc;
  for (int s = 0; s < 5000; ++s) {
    const double angle = 2.0 * pi * s / 5000.0;
    disc.push_back(Vector{{std::cos(angle), std::sin(angle)}});
  }
  for (int s = 0; s < 5000; ++s) disc.push_back(sample_member(FeasibleSet::unit_ball(2), rng));
  cases.emplace_back(FeasibleSet::unit_ball(2), std::move(disc));

  std::vector<Vector> grid;
  for (int a = 0; a < kGrid; ++a)
    for (int b = 0; b < kGrid; ++b)
      grid.push_back(Vector{{-1.0 + 3.0 * a / (kGrid - 1), 0.5 * b / (kGrid - 1)}});
  cases.emplace_back(FeasibleSet(Box{Vector{{-1.0, 0.0}}, Vector{{2.0, 0.5}}}), std::move(grid));

  std::vector<Vector> segment;
  for (int s = 0; s < kGrid * kGrid; ++s) {
    const double u = static_cast<double>(s) / (kGrid * kGrid - 1);
    segment.push_back(Vector{{u, 1.0 - u}});
  }
  cases.emplace_back(FeasibleSet(Simplex{2, 1.0}), std::move(segment));

  for (const auto& [set, points] : cases)
    for (int s = 0; s < 200; ++s) {
      const Vector g = rng.normal_vector(2);
      double brute = std::numeric_limits<double>::infinity();
      for (const auto& y : points) brute = std::min(brute, g.dot(y));
      const double oracle = g.dot(set.lmo(g));
      t.expect(oracle <= brute + 1e-12 && oracle >= brute - 1e-6 * std::max(1.0, g.norm()), [&] {
        return fmt::format("{}: lmo value {:.9e} vs brute force {:.9e}", set_name(set), oracle, brute);
      });
    }
  return t.take();
}

CheckResult norm_bound_dominance(const std::vector<FeasibleSet>& sets, Rng& rng) {
  Tally t("map_norm_bound dominance");
  for (const auto& set : sets)
    for (int m = 0; m < 5; ++m) {
      const Eigen::Index n = set.dim();
      Matrix a(n, n);
      for (Eigen::Index c = 0; c < n; ++c) a.col(c) = rng.normal_vector(n);
      const AffineMap map(a, rng.normal_vector(n));
      const double bound = map_norm_bound(map, set);
      for (int s = 0; s < kSamples; ++s) {
        const double value = map.evaluate(sample_member(set, rng)).norm();
        t.expect(value <= bound * (1.0 + 1e-12), [&] {
          return fmt::format("{}: |map(y)| = {:.6e} > bound {:.6e}", set_name(set), value, bound);
        });
      }
    }
  return t.take();
}

CheckResult tikhonov_monotonicity(Rng& rng) {
  Tally t("tikhonov map monotonicity");
  auto check = [&](const Matrix& mf, const Matrix& mg, const std::string& label) {
    const double df = monotonicity_defect(mf);
    const double dg = monotonicity_defect(mg);
    for (double tau : {0.5, 1.0, 10.0, 100.0}) {
      const double d = monotonicity_defect(mf + mg / tau);
      t.expect(d >= std::min(0.0, df + dg / tau) - 1e-12, [&] {
        return fmt::format("{} tau={}: defect {:.3e} below {:.3e}", label, tau, d, df + dg / tau);
      });
    }
  };
  for (int s = 0; s < 50; ++s) {
    const Eigen::Index n = 2 + s % 6;
    Matrix b(n, n), c(n, n), k(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      b.col(j) = rng.normal_vector(n);
      c.col(j) = rng.normal_vector(n);
      k.col(j) = rng.normal_vector(n);
    }
    check(b.transpose() * b + (k - k.transpose()), c - c.transpose(), "random monotone pair");
  }
  const NestedVIProblem rot = rotation2d();
  check(rot.lower().matrix(), rot.upper().matrix(), "rotation2d");
  const NestedVIProblem fam = random_skew_rank_one({100, 0.1, 7});
  check(fam.lower().matrix(), fam.upper().matrix(), "random family");
  return t.take();
}

CheckResult step_sum_bounds() {
  Tally t("step-size sum bounds");
  for (double a : {0.5, 1.0, 2.0})
    for (double alpha : {0.25, 0.5, 1.0}) {
      const StepSizeRule rule(PowerStep{a, alpha});
      double s1 = 0.0;
      double s2 = 0.0;
      std::int64_t k = 0;
      for (std::int64_t target : {100, 1000, 100000}) {
        for (; k <= target; ++k) {
          const double g = rule.gamma(k);
          t.expect(g > 0.0 && g <= 1.0, [&] { return fmt::format("gamma_{} = {} outside (0,1]", k, g); });
          s1 += g;
          s2 += g * g;
        }
        const double lower = gamma_sum_lower_bound(a, alpha, target);
        const double upper = gamma_sq_sum_upper_bound(a, alpha, target);
        t.expect(lower <= s1, [&] {
          return fmt::format("a={} alpha={} K={}: lower bound {:.9e} > sum {:.9e}", a, alpha, target, lower, s1);
        });
        t.expect(s2 <= upper, [&] {
          return fmt::format("a={} alpha={} K={}: sum sq {:.9e} > upper bound {:.9e}", a, alpha, target, s2, upper);
        });
      }
    }
  return t.take();
}

CheckResult step_ratio_decrease() {
  Tally t("step-size ratio decrease");
  std::vector<StepSizeRule> rules;
  for (double a : {0.5, 1.0, 2.0})
    for (double alpha : {0.25, 0.5, 1.0}) rules.emplace_back(PowerStep{a, alpha});
  rules.emplace_back(RecursiveStep{1.0, 0.5});
  rules.emplace_back(RecursiveStep{0.5, 0.1});
  for (const auto& rule : rules) {
    StepSizeSequence seq(rule);
    double s1 = 0.0;
    double s2 = 0.0;
    double prev_ratio = std::numeric_limits<double>::infinity();
    double prev_gamma = 2.0;
    std::int64_t k = 0;
    for (std::int64_t target : {1000, 10000, 100000}) {
      for (; k <= target; ++k) {
        const double g = seq(k);
        if (std::holds_alternative<RecursiveStep>(rule.variant()))
          t.expect(g < prev_gamma && g > 0.0, [&] { return fmt::format("recursive gamma not decreasing at k={}", k); });
        prev_gamma = g;
        s1 += g;
        s2 += g * g;
      }
      const double ratio = s2 / s1;
      t.expect(ratio < prev_ratio, [&] {
        return fmt::format("rho({}) = {:.6e} not below previous {:.6e}", target, ratio, prev_ratio);
      });
      prev_ratio = ratio;
    }
  }
  return t.take();
}

CheckResult residual_bound_and_relations(Rng& rng, CheckResult& relations, CheckResult& gap_sign) {
  Tally bound_check("lower-level residual bound");
  Tally rel("residual-gap relations");
  Tally sign("subproblem gap nonnegative");
  const std::vector<std::pair<std::string, NestedVIProblem>> problems = {
      {"rotation2d", rotation2d()}, {"random n=100 zeta=0.1", random_skew_rank_one({100, 0.1, 7})}};
  for (const auto& [label, problem] : problems)
    for (double tau : {1.0, 10.0, 100.0}) {
      const AffineMap phi = tikhonov_affine(problem, tau);
      const double omega = problem.set().diameter();
      const double xi = map_norm_bound(phi, problem.set());
      for (int s = 0; s < kSamples; ++s) {
        const Vector z = sample_member(problem.set(), rng);
        const double v = lower_natural_residual(problem, z);
        const double bound = lower_level_residual_bound(problem, tau, z);
        bound_check.expect(v <= bound + 1e-9, [&] {
          return fmt::format("{} tau={}: V(z) = {:.9e} > bound {:.9e}", label, tau, v, bound);
        });
        const double gap = subproblem_gap(problem, tau, z);
        sign.expect(gap >= -1e-12, [&] { return fmt::format("{} tau={}: gap {:.3e} < 0", label, tau, gap); });
        const double u = natural_residual(phi, problem.set(), z);
        rel.expect(u <= std::sqrt(std::max(gap, 0.0)) + 1e-9, [&] {
          return fmt::format("{} tau={}: U = {:.9e} > sqrt(gap) = {:.9e}", label, tau, u, std::sqrt(gap));
        });
        rel.expect(gap <= (omega + xi) * u + 1e-9, [&] {
          return fmt::format("{} tau={}: gap {:.9e} > (Omega + Xi) U = {:.9e}", label, tau, gap, (omega + xi) * u);
        });
      }
    }
  relations = rel.take();
  gap_sign = sign.take();
  return bound_check.take();
}

CheckResult averaging_window(Rng& rng) {
  Tally t("averaging window recomputation");
  for (int run = 0; run < 20; ++run) {
    const Eigen::Index n = 1 + run % 5;
    std::vector<Vector> ys;
    std::vector<double> weights;
    Vector z = Vector::Zero(n);
    double sum = 0.0;
    for (int m = 0; m < 100; ++m) {
      const double w = 0.01 + rng.uniform();
      const Vector y = rng.normal_vector(n);
      std::tie(z, sum) = averaging_update(z, sum, w, y);
      ys.push_back(y);
      weights.push_back(w);
      Vector direct = Vector::Zero(n);
      double total = 0.0;
      for (std::size_t j = 0; j < ys.size(); ++j) {
        direct += weights[j] * ys[j];
        total += weights[j];
      }
      direct /= total;
      const double err = (direct - z).norm();
      t.expect(err <= 1e-12 * std::max(1.0, direct.norm()),
               [&] { return fmt::format("run {} step {}: |z - direct| = {:.3e}", run, m, err); });
    }
  }
  return t.take();
}

bool same_trace(const std::vector<IterationRecord>& a, const std::vector<IterationRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const auto& x = a[j];
    const auto& y = b[j];
    if (x.k != y.k || x.i != y.i || x.l != y.l || x.tau != y.tau || x.epsilon != y.epsilon ||
        x.gamma != y.gamma || x.z_norm != y.z_norm || x.gap != y.gap || x.measure != y.measure ||
        x.v_residual != y.v_residual || x.outer_event != y.outer_event)
      return false;
  }
  return true;
}

CheckResult determinism() {
  Tally t("determinism");
  const RandomFamilySpec spec{100, 0.1, 11};
  const NestedVIProblem a = random_skew_rank_one(spec);
  const NestedVIProblem b = random_skew_rank_one(spec);
  t.expect(a.upper().matrix() == b.upper().matrix() && a.lower().matrix() == b.lower().matrix() &&
               a.upper().offset() == b.upper().offset(),
           [] { return std::string("random family differs between identical specs"); });
  SolverConfig config;
  config.step = PowerStep{1.0, 0.25};
  config.k_max = 2000;
  config.max_inner_records = 2000;
  const SolveResult r1 = pata_solve(a, config);
  const SolveResult r2 = pata_solve(b, config);
  t.expect(same_trace(r1.trace, r2.trace) && r1.final_z == r2.final_z,
           [] { return std::string("PATA traces differ between identical runs"); });
  config.kind = SolverKind::kBaseline;
  const SolveResult b1 = solve(a, config);
  const SolveResult b2 = solve(b, config);
  t.expect(same_trace(b1.trace, b2.trace) && b1.final_z == b2.final_z,
           [] { return std::string("baseline traces differ between identical runs"); });
  return t.take();
}

}  // namespace

std::vector<CheckResult> run_property_checks(const CheckOptions& options) {
  Rng rng(options.seed);
  const Projector proj = options.projector
                             ? options.projector
                             : Projector([](const FeasibleSet& s, const Vector& x) { return s.project(x); });
  const auto sets = test_sets();
  std::vector<CheckResult> out;
  out.push_back(projection_idempotence(sets, proj, rng));
  out.push_back(projection_characterization(sets, proj, rng));
  out.push_back(projection_nonexpansive(sets, proj, rng));
  out.push_back(lmo_optimality(sets, rng));
  out.push_back(lmo_brute_force(rng));
  out.push_back(norm_bound_dominance(sets, rng));
  out.push_back(tikhonov_monotonicity(rng));
  out.push_back(step_sum_bounds());
  out.push_back(step_ratio_decrease());
  CheckResult relations;
  CheckResult gap_sign;
  out.push_back(residual_bound_and_relations(rng, relations, gap_sign));
  out.push_back(std::move(relations));
  out.push_back(std::move(gap_sign));
  out.push_back(averaging_window(rng));
  out.push_back(determinism());
  return out;
}

}  // namespace nvi::checks
