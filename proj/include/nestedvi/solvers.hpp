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

#ifndef NESTEDVI_SOLVERS_HPP_
#define NESTEDVI_SOLVERS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nestedvi/core.hpp"
#include "nestedvi/merit.hpp"
#include "nestedvi/schedules.hpp"

namespace nvi {

// Random direction projected to the boundary of Y.
struct BoundaryRandom {
  std::uint64_t seed = 42;
};

using InitialPoint = std::variant<Vector, BoundaryRandom>;

enum class SolverKind { kPata, kPataCertificate, kBaseline };

struct SolverConfig {
  StepSizeRule step = PowerStep{0.5, 0.5};
  TikhonovSchedule tikhonov = PowerLawSchedule{};
  std::int64_t k_max = 1'000'000;
  double tol = 1e-3;
  InitialPoint initial = BoundaryRandom{};
  // Gap test frequency in iterations.
  std::int64_t check_every = 1;
  // Rescale F and G by 0.9 / (L_F + L_G) when L_F + L_G >= 1.
  bool normalize_maps = false;
  // The k-th PATA step uses gamma(k - l + index_offset), l being the first
  // iteration of the current subproblem. 0 is the literal practical-PATA
  // indexing (gamma_0 = 1 right after every restart); 1 counts inner
  // iterations from one and reproduces the reference rotation table.
  std::int64_t index_offset = 1;
  // Inner rows kept in the trace; outer events are always kept.
  std::int64_t max_inner_records = 10'000;
  SolverKind kind = SolverKind::kPata;
  // Fixed step of the non-averaging baseline.
  double lambda = 0.1;
};

struct IterationRecord {
  std::int64_t k = 0;
  std::int64_t i = 0;
  std::int64_t l = 0;
  double tau = 0.0;
  double epsilon = 0.0;
  double gamma = 0.0;
  double z_norm = 0.0;
  double gap = 0.0;
  double measure = 0.0;
  double v_residual = 0.0;
  bool outer_event = false;
};

enum class Termination { kTolReached, kKMaxReached, kCertificateReached };

const char* to_string(Termination t);

struct Certificate {
  std::int64_t i_bar_max = 0;
  double sigma_bar = 0.0;
  double target = 0.0;          // I_bar_max^-2
  double dual_gap_bound = 0.0;  // at termination
  ErrorBundle dual;             // translated dual errors at termination
};

struct SolveResult {
  Vector final_z;
  Vector final_w;
  // Last y iterate; for the baseline final_z == final_y.
  Vector final_y;
  std::vector<IterationRecord> trace;
  Termination termination = Termination::kKMaxReached;
  std::int64_t outer_count = 0;
  std::int64_t iterations = 0;
  // Factor applied to F and G by normalize_maps (1 if untouched).
  double scale_factor = 1.0;
  double upper_defect = 0.0;
  double lower_defect = 0.0;
  // Set when a monotonicity defect is below -1e-8.
  bool assumptions_flagged = false;
  std::vector<std::string> warnings;
  std::optional<Certificate> certificate;
};

// Read-only iterate view passed to observers.
struct IterationView {
  const Vector& y;
  const Vector& z;
};

// Invoked at every recorded row (including every outer event). Must not
// retain the view past the call.
using Observer = std::function<void(const IterationRecord&, const IterationView&)>;

// Non-finite iterate. Carries the trace recorded so far.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::vector<IterationRecord> trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}

  const std::vector<IterationRecord>& trace() const { return trace_; }
  // At most the last 10 rows.
  std::vector<IterationRecord> recent() const;

 private:
  std::vector<IterationRecord> trace_;
};

// Weighted running average: (z * gamma_sum + gamma_next * y_next) /
// (gamma_sum + gamma_next) and the new weight total.
std::pair<Vector, double> averaging_update(const Vector& z, double gamma_sum, double gamma_next,
                                           const Vector& y_next);

// Projected averaging Tikhonov algorithm (practical form).
SolveResult pata_solve(const NestedVIProblem& problem, const SolverConfig& config,
                       const Observer& observer = {});

// Fixed tau = ceil((H + 1) / delta), gamma_k = min{1, 1 / (2 sqrt(k))}, no
// restarts; stops once the dual gap bound reaches tau^-2.
SolveResult pata_solve_certificate(const NestedVIProblem& problem, const SolverConfig& config,
                                   const Observer& observer = {});

// Projected Tikhonov gradient steps with fixed step lambda and no averaging;
// the outer test is applied to y itself.
SolveResult baseline_tikhonov_solve(const NestedVIProblem& problem, const SolverConfig& config,
                                    double lambda, const Observer& observer = {});

// Dispatches on config.kind.
SolveResult solve(const NestedVIProblem& problem, const SolverConfig& config,
                  const Observer& observer = {});

}  // namespace nvi

#endif  // NESTEDVI_SOLVERS_HPP_
