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

#ifndef NESTEDVI_BENCH_HPP_
#define NESTEDVI_BENCH_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "nestedvi/core.hpp"
#include "nestedvi/problems.hpp"
#include "nestedvi/solvers.hpp"

namespace nvi::bench {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfig = 2, kExitSolver = 3 };

struct Rotation2dSpec {};

struct InlineProblemSpec {
  std::string json;  // core problem schema
};

using ProblemSpec = std::variant<Rotation2dSpec, RandomFamilySpec, InlineProblemSpec>;

struct SweepSpec {
  std::vector<std::uint64_t> seeds{1, 2, 3};
  std::vector<double> zetas{0.01, 0.1};
  Eigen::Index n = 100;
};

struct RunConfig {
  std::optional<ProblemSpec> problem;
  SolverConfig solver;
  std::string output = "nvi_out";
  SweepSpec sweep;
  int jobs = 1;
};

// Every schema violation found in a config document, one per line.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(std::vector<std::string> diagnostics);
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

// Solver defaults used by `compare`: power step a = 1, alpha = 1/4,
// tau = i, eps = 1/i^2, k_max = 5e4, and a tolerance small enough that the
// run always spends the full budget.
RunConfig compare_defaults();

// Solver defaults used by `table1`: a = alpha = 1/2, tau = i, eps = 1/i^2,
// k_max = 1e6, tol = 1e-3.
RunConfig table1_defaults();

// Parses a JSON config on top of `base`. Keys: problem, solver, step,
// tikhonov, k_max, tol, initial, check_every, normalize_maps, index_offset,
// record_limit, lambda, output, sweep, jobs. Unknown keys are rejected.
RunConfig parse_run_config(const std::string& text, RunConfig base = {});

NestedVIProblem build_problem(const ProblemSpec& spec);

inline constexpr const char* kCsvHeader = "k,i,l,tau,epsilon,gamma,z_norm,gap,measure,v_residual";

std::string trace_csv(const std::vector<IterationRecord>& trace);
std::string events_csv(const std::vector<IterationRecord>& trace);

struct Series {
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  int width = 720;
  int height = 440;
};

// SVG 1.1 line chart with a log10 y axis. Non-positive or non-finite y values
// are skipped.
std::string line_chart_svg(const Chart& chart);

// Writes to `path` + ".tmp" and renames over `path`.
void write_file_atomic(const std::string& path, const std::string& contents);

struct CommandOptions {
  std::optional<std::string> config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  bool quiet = false;
};

struct Table1Row {
  std::int64_t i = 0;
  std::int64_t k = 0;
  double epsilon = 0.0;
  double z_norm = 0.0;
};

// Printed reference rows of the rotation experiment.
const std::vector<Table1Row>& table1_reference();

struct Verdict {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Table-1 tolerances: epsilon column exact, tol reached, final ||z|| <=
// 2e-3, ||z|| decreasing from i = 3 within factor 1.1, k within 30% and
// ||z|| within factor 2 of the reference for i >= 5.
std::vector<Verdict> judge_table1(const std::vector<Table1Row>& rows, Termination termination,
                                  double tol);

int cmd_solve(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_table1(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_compare(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_check(const CommandOptions& options, std::ostream& out, std::ostream& err);

}  // namespace nvi::bench

#endif  // NESTEDVI_BENCH_HPP_
