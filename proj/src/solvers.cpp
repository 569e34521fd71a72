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

#include "nestedvi/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nestedvi/random.hpp"

namespace nvi {
namespace {

constexpr double kDefectTol = 1e-8;

void validate(const SolverConfig& config) {
  if (config.k_max < 1) throw InputError("k_max must be >= 1");
  if (!(config.tol > 0.0)) throw InputError("tol must be positive");
  if (config.check_every < 1) throw InputError("check_every must be >= 1");
  if (config.index_offset < 0) throw InputError("index_offset must be >= 0");
  if (config.max_inner_records < 1) throw InputError("max_inner_records must be >= 1");
}

struct Setup {
  NestedVIProblem problem;
  Vector y0;
  SolveResult shell;
};

Setup prepare(const NestedVIProblem& original, const SolverConfig& config) {
  validate(config);
  SolveResult shell;
  shell.upper_defect = original.upper_defect();
  shell.lower_defect = original.lower_defect();
  if (shell.upper_defect < -kDefectTol || shell.lower_defect < -kDefectTol) {
    shell.assumptions_flagged = true;
    std::ostringstream msg;
    msg << "monotonicity defect below tolerance (upper " << shell.upper_defect << ", lower "
        << shell.lower_defect << "); proceeding";
    shell.warnings.push_back(msg.str());
  }

  double factor = 1.0;
  const double l_phi = original.constants().L_phi();
  if (config.normalize_maps && l_phi >= 1.0) factor = 0.9 / l_phi;
  shell.scale_factor = factor;
  NestedVIProblem problem = factor == 1.0 ? original : original.scaled(factor);

  Vector y0;
  if (const auto* v = std::get_if<Vector>(&config.initial)) {
    if (v->size() != problem.dim()) throw InputError("initial point has wrong dimension");
    if (!v->allFinite()) throw InputError("initial point has non-finite entries");
    y0 = problem.set().project(*v);
  } else {
    Rng rng(std::get<BoundaryRandom>(config.initial).seed);
    y0 = sample_boundary(problem.set(), rng);
  }
  return Setup{std::move(problem), std::move(y0), std::move(shell)};
}

// Collects thinned inner rows plus every outer event and forwards them to the
// observer.
class Recorder {
 public:
  Recorder(const NestedVIProblem& problem, const SolverConfig& config, const Observer& observer,
           std::vector<IterationRecord>& trace)
      : problem_(problem), observer_(observer), trace_(trace) {
    const std::int64_t per = config.max_inner_records;
    stride_ = std::max<std::int64_t>(1, (config.k_max + per - 1) / per);
    k_max_ = config.k_max;
  }

  bool due(std::int64_t k) const { return k % stride_ == 0 || k == k_max_; }

  void add(IterationRecord rec, const Vector& y, const Vector& z) {
    rec.z_norm = z.norm();
    rec.measure = optimality_measure(std::max(rec.gap, 0.0), rec.tau);
    rec.v_residual = lower_natural_residual(problem_, z);
    trace_.push_back(rec);
    if (observer_) observer_(trace_.back(), IterationView{y, z});
  }

 private:
  const NestedVIProblem& problem_;
  const Observer& observer_;
  std::vector<IterationRecord>& trace_;
  std::int64_t stride_ = 1;
  std::int64_t k_max_ = 1;
};

void guard_finite(const Vector& y, const Vector& z, std::int64_t k,
                  const std::vector<IterationRecord>& trace) {
  if (y.allFinite() && z.allFinite()) return;
  std::ostringstream msg;
  msg << "non-finite iterate at k = " << k;
  throw SolverError(msg.str(), trace);
}

}  // namespace

const char* to_string(Termination t) {
  switch (t) {
    case Termination::kTolReached:
      return "tol_reached";
    case Termination::kKMaxReached:
      return "k_max_reached";
    case Termination::kCertificateReached:
      return "certificate_reached";
  }
  return "unknown";
}

std::vector<IterationRecord> SolverError::recent() const {
  const std::size_t n = std::min<std::size_t>(10, trace_.size());
  return {trace_.end() - static_cast<std::ptrdiff_t>(n), trace_.end()};
}

std::pair<Vector, double> averaging_update(const Vector& z, double gamma_sum, double gamma_next,
                                           const Vector& y_next) {
  if (!(gamma_sum >= 0.0)) throw InputError("gamma_sum must be nonnegative");
  if (!(gamma_next > 0.0)) throw InputError("gamma_next must be positive");
  if (z.size() != y_next.size()) throw InputError("dimension mismatch in averaging_update");
  const double total = gamma_sum + gamma_next;
  if (gamma_sum == 0.0) return {y_next, total};
  return {(gamma_sum * z + gamma_next * y_next) / total, total};
}

SolveResult pata_solve(const NestedVIProblem& original, const SolverConfig& config,
                       const Observer& observer) {
  if (config.tikhonov.is_certificate())
    throw InputError("theorem3 schedule requires pata_solve_certificate");
  Setup setup = prepare(original, config);
  const NestedVIProblem& problem = setup.problem;
  const FeasibleSet& set = problem.set();
  SolveResult result = std::move(setup.shell);
  Recorder recorder(problem, config, observer, result.trace);
  StepSizeSequence gamma(config.step);

  Vector y = setup.y0;
  Vector z = y;
  Vector w = y;
  std::int64_t i = 1;
  std::int64_t l = 0;
  double gamma_sum = 0.0;
  double tau = config.tikhonov.tau(i);
  double eps = config.tikhonov.epsilon(i);
  AffineMap phi = tikhonov_affine(problem, tau);
  bool stopped = false;
  std::int64_t k = 1;

  for (; k <= config.k_max; ++k) {
    const double g = gamma(k - l + config.index_offset);
    y = set.project(y - g * phi.evaluate(y));
    auto [z_next, sum_next] = averaging_update(z, gamma_sum, g, y);
    z = std::move(z_next);
    guard_finite(y, z, k, result.trace);

    const bool check = k % config.check_every == 0 || k == config.k_max;
    const bool record = recorder.due(k);
    double gap = std::numeric_limits<double>::quiet_NaN();
    if (check || record) gap = gap_from_direction(set, phi.evaluate(z), z);
    const bool event = check && gap <= eps;
    if (event || record) {
      IterationRecord rec{.k = k, .i = i, .l = l, .tau = tau, .epsilon = eps, .gamma = g,
                          .gap = gap, .outer_event = event};
      recorder.add(rec, y, z);
    }
    if (event) {
      w = z;
      ++result.outer_count;
      if (eps <= config.tol) {
        result.termination = Termination::kTolReached;
        stopped = true;
        break;
      }
      ++i;
      l = k + 1;
      gamma_sum = 0.0;
      tau = config.tikhonov.tau(i);
      eps = config.tikhonov.epsilon(i);
      phi = tikhonov_affine(problem, tau);
    } else {
      gamma_sum = sum_next;
    }
  }
  if (!stopped) result.termination = Termination::kKMaxReached;
  result.iterations = std::min(k, config.k_max);
  result.final_z = std::move(z);
  result.final_y = std::move(y);
  result.final_w = std::move(w);
  return result;
}

SolveResult pata_solve_certificate(const NestedVIProblem& original, const SolverConfig& config,
                                   const Observer& observer) {
  const auto* schedule = std::get_if<Theorem3Schedule>(&config.tikhonov.variant());
  if (schedule == nullptr) throw InputError("pata_solve_certificate requires the theorem3 schedule");
  Setup setup = prepare(original, config);
  const NestedVIProblem& problem = setup.problem;
  const FeasibleSet& set = problem.set();
  const ProblemConstants& c = problem.constants();
  SolveResult result = std::move(setup.shell);
  Recorder recorder(problem, config, observer, result.trace);

  const StepSizeRule rule = theorem2_step_rule();
  if (const auto* p = std::get_if<PowerStep>(&config.step.variant());
      p == nullptr || p->a != 0.5 || p->alpha != 0.5)
    result.warnings.emplace_back("certificate mode uses gamma_k = min{1, 1/(2 sqrt(k))}; configured step rule ignored");
  StepSizeSequence gamma(rule);

  const Theorem3Bound bound = complexity_bound_thm3(schedule->delta, c.D, c.R, c.H);
  const double tau = static_cast<double>(bound.i_bar_max);
  const double target = 1.0 / (tau * tau);
  const AffineMap phi = tikhonov_affine(problem, tau);

  // z^k averages y^0..y^k with the weight of the step taken from each point.
  Vector y = setup.y0;
  Vector z = y;
  double sum = gamma(0);
  double sum_sq = sum * sum;
  double dual_bound = std::numeric_limits<double>::infinity();
  bool stopped = false;
  std::int64_t k = 1;

  for (; k <= config.k_max; ++k) {
    y = set.project(y - gamma(k - 1) * phi.evaluate(y));
    const double g = gamma(k);
    z = averaging_update(z, sum, g, y).first;
    sum += g;
    sum_sq += g * g;
    guard_finite(y, z, k, result.trace);
    dual_bound = dual_gap_bound_from_sums(sum, sum_sq, c.D, c.R, c.H);
    const bool done = dual_bound <= target;
    if (done || recorder.due(k)) {
      IterationRecord rec{.k = k, .i = 0, .l = 0, .tau = tau, .epsilon = target, .gamma = g,
                          .gap = gap_from_direction(set, phi.evaluate(z), z), .outer_event = done};
      recorder.add(rec, y, z);
    }
    if (done) {
      result.termination = Termination::kCertificateReached;
      result.outer_count = 1;
      stopped = true;
      break;
    }
  }
  if (!stopped) result.termination = Termination::kKMaxReached;
  result.iterations = std::min(k, config.k_max);
  Certificate cert;
  cert.i_bar_max = bound.i_bar_max;
  cert.sigma_bar = bound.sigma_bar;
  cert.target = target;
  cert.dual_gap_bound = dual_bound;
  cert.dual = translate_errors_dual(dual_bound, tau, c.H, c.D);
  result.certificate = cert;
  result.final_w = z;
  result.final_z = std::move(z);
  result.final_y = std::move(y);
  return result;
}

SolveResult baseline_tikhonov_solve(const NestedVIProblem& original, const SolverConfig& config,
                                    double lambda, const Observer& observer) {
  if (!(lambda > 0.0)) throw InputError("lambda must be positive");
  if (config.tikhonov.is_certificate())
    throw InputError("baseline requires an outer tau schedule (theorem2 or powerlaw)");
  Setup setup = prepare(original, config);
  const NestedVIProblem& problem = setup.problem;
  const FeasibleSet& set = problem.set();
  SolveResult result = std::move(setup.shell);
  Recorder recorder(problem, config, observer, result.trace);

  Vector y = setup.y0;
  Vector w = y;
  std::int64_t i = 1;
  std::int64_t l = 0;
  double tau = config.tikhonov.tau(i);
  double eps = config.tikhonov.epsilon(i);
  AffineMap phi = tikhonov_affine(problem, tau);
  bool stopped = false;
  std::int64_t k = 1;

  for (; k <= config.k_max; ++k) {
    y = set.project(y - lambda * phi.evaluate(y));
    guard_finite(y, y, k, result.trace);
    const bool check = k % config.check_every == 0 || k == config.k_max;
    const bool record = recorder.due(k);
    double gap = std::numeric_limits<double>::quiet_NaN();
    if (check || record) gap = gap_from_direction(set, phi.evaluate(y), y);
    const bool event = check && gap <= eps;
    if (event || record) {
      IterationRecord rec{.k = k, .i = i, .l = l, .tau = tau, .epsilon = eps, .gamma = lambda,
                          .gap = gap, .outer_event = event};
      recorder.add(rec, y, y);
    }
    if (event) {
      w = y;
      ++result.outer_count;
      if (eps <= config.tol) {
        result.termination = Termination::kTolReached;
        stopped = true;
        break;
      }
      ++i;
      l = k + 1;
      tau = config.tikhonov.tau(i);
      eps = config.tikhonov.epsilon(i);
      phi = tikhonov_affine(problem, tau);
    }
  }
  if (!stopped) result.termination = Termination::kKMaxReached;
  result.iterations = std::min(k, config.k_max);
  result.final_z = y;
  result.final_w = std::move(w);
  result.final_y = std::move(y);
  return result;
}

SolveResult solve(const NestedVIProblem& problem, const SolverConfig& config,
                  const Observer& observer) {
  switch (config.kind) {
    case SolverKind::kPata:
      return pata_solve(problem, config, observer);
    case SolverKind::kPataCertificate:
      return pata_solve_certificate(problem, config, observer);
    case SolverKind::kBaseline:
      return baseline_tikhonov_solve(problem, config, config.lambda, observer);
  }
  throw InputError("unknown solver kind");
}

}  // namespace nvi
