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

#include <json.hpp>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "nestedvi/bench.hpp"
#include "nestedvi/checks.hpp"
#include "nestedvi/error.hpp"
#include "nestedvi/merit.hpp"

namespace nvi::bench {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError({"config: cannot read " + path});
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

RunConfig load_config(const CommandOptions& options, RunConfig base) {
  RunConfig cfg = options.config_path ? parse_run_config(read_text(*options.config_path), std::move(base))
                                      : std::move(base);
  if (options.out_dir) cfg.output = *options.out_dir;
  if (options.jobs) {
    if (*options.jobs < 1) throw ConfigError({"--jobs: must be >= 1"});
    cfg.jobs = *options.jobs;
  }
  if (options.seed && std::holds_alternative<BoundaryRandom>(cfg.solver.initial))
    cfg.solver.initial = BoundaryRandom{*options.seed};
  return cfg;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

const char* kind_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::kPata: return "pata";
    case SolverKind::kPataCertificate: return "pata_certificate";
    case SolverKind::kBaseline: return "baseline";
  }
  return "unknown";
}

json record_json(const IterationRecord& r) {
  return {{"k", r.k},         {"i", r.i},           {"tau", r.tau},         {"epsilon", r.epsilon},
          {"gap", r.gap},     {"measure", r.measure}, {"z_norm", r.z_norm}, {"v_residual", r.v_residual}};
}

json constants_json(const ProblemConstants& c) {
  return {{"H", c.H}, {"R", c.R}, {"D", c.D}, {"L_F", c.L_F}, {"L_G", c.L_G}};
}

json result_json(const NestedVIProblem& problem, const SolveResult& r, SolverKind kind) {
  json j;
  j["solver"] = kind_name(kind);
  j["termination"] = to_string(r.termination);
  j["outer_count"] = r.outer_count;
  j["iterations"] = r.iterations;
  j["final"] = r.trace.empty() ? json(nullptr) : record_json(r.trace.back());
  j["constants"] = constants_json(problem.constants());
  j["scale_factor"] = r.scale_factor;
  j["monotonicity_defects"] = {{"upper", r.upper_defect}, {"lower", r.lower_defect}};
  j["assumptions_flagged"] = r.assumptions_flagged;
  j["warnings"] = r.warnings;
  if (r.certificate) {
    const Certificate& c = *r.certificate;
    j["certificate"] = {{"i_bar_max", c.i_bar_max},
                        {"sigma_bar", c.sigma_bar},
                        {"target", c.target},
                        {"dual_gap_bound", c.dual_gap_bound},
                        {"eps_up", c.dual.eps_up},
                        {"eps_low", c.dual.eps_low},
                        {"eps_low_hat", c.dual.eps_low_hat}};
  }
  return j;
}

void print_recent(std::ostream& err, const std::vector<IterationRecord>& rows) {
  err << kCsvHeader << "\n";
  std::string body = trace_csv(rows);
  err << body.substr(body.find('\n') + 1);
}

// Maps exceptions to exit codes shared by every command.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return kExitConfig;
  } catch (const InputError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << "\n";
    print_recent(err, e.recent());
    return kExitSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

std::string zeta_tag(double zeta) { return fmt::format("{:g}", zeta); }

struct PairOutcome {
  std::uint64_t seed = 0;
  double zeta = 0.0;
  std::optional<SolveResult> pata;
  std::optional<SolveResult> baseline;
  std::string error;
  double upper_defect = 0.0;
  double lower_defect = 0.0;
  bool flagged = false;
};

double final_measure(const SolveResult& r) {
  return r.trace.empty() ? std::numeric_limits<double>::infinity() : r.trace.back().measure;
}

void run_pair(const RunConfig& cfg, PairOutcome& pair) {
  const NestedVIProblem problem = random_skew_rank_one({cfg.sweep.n, pair.zeta, pair.seed});
  pair.upper_defect = problem.upper_defect();
  pair.lower_defect = problem.lower_defect();
  pair.flagged = pair.upper_defect < -1e-6 || pair.lower_defect < -1e-6;
  const std::string stem = (fs::path(cfg.output) / fmt::format("seed{}_zeta{}", pair.seed, zeta_tag(pair.zeta))).string();

  SolverConfig pata = cfg.solver;
  pata.kind = SolverKind::kPata;
  SolverConfig base = cfg.solver;
  base.kind = SolverKind::kBaseline;
  try {
    pair.pata = solve(problem, pata);
    write_file_atomic(stem + "_pata.csv", trace_csv(pair.pata->trace));
    pair.baseline = solve(problem, base);
    write_file_atomic(stem + "_baseline.csv", trace_csv(pair.baseline->trace));
  } catch (const SolverError& e) {
    pair.error = e.what();
    write_file_atomic(stem + (pair.pata ? "_baseline.csv" : "_pata.csv"), trace_csv(e.trace()));
    return;
  }

  Chart chart;
  chart.title = fmt::format("optimality measure, n = {}, seed {}, zeta = {}", cfg.sweep.n, pair.seed,
                            zeta_tag(pair.zeta));
  chart.x_label = "iteration k";
  chart.y_label = "max{eps tau, eps + 1/tau}";
  for (const auto* r : {&*pair.pata, &*pair.baseline}) {
    Series s;
    s.label = r == &*pair.pata ? "PATA" : fmt::format("baseline (lambda = {:g})", cfg.solver.lambda);
    s.color = r == &*pair.pata ? "#1f77b4" : "#d62728";
    for (const auto& row : r->trace) {
      s.x.push_back(static_cast<double>(row.k));
      s.y.push_back(row.measure);
    }
    chart.series.push_back(std::move(s));
  }
  write_file_atomic(stem + ".svg", line_chart_svg(chart));
}

}  // namespace

const std::vector<Table1Row>& table1_reference() {
  static const std::vector<Table1Row> rows = {
      {1, 1, 1.00000, 1.00e+00},       {2, 50, 0.25000, 3.28e-01},      {3, 107, 0.11111, 1.29e-01},
      {4, 165, 0.06250, 6.78e-02},     {5, 223, 0.04000, 4.05e-02},     {6, 281, 0.02778, 2.57e-02},
      {7, 339, 0.02041, 2.01e-02},     {8, 540, 0.01562, 1.48e-02},     {9, 740, 0.01235, 1.20e-02},
      {10, 1166, 0.01000, 9.73e-03},   {20, 17691, 0.00250, 2.55e-03},  {21, 21952, 0.00227, 2.32e-03},
      {22, 27084, 0.00207, 2.10e-03},  {23, 33167, 0.00189, 1.92e-03},  {24, 40281, 0.00174, 1.77e-03},
      {25, 48506, 0.00160, 1.63e-03},  {26, 59199, 0.00148, 1.49e-03},  {27, 71242, 0.00137, 1.39e-03},
      {28, 84715, 0.00128, 1.30e-03},  {29, 99699, 0.00119, 1.21e-03},  {30, 117950, 0.00111, 1.13e-03},
      {31, 137950, 0.00104, 1.06e-03}, {32, 161698, 0.00098, 9.88e-04},
  };
  return rows;
}

std::vector<Verdict> judge_table1(const std::vector<Table1Row>& rows, Termination termination,
                                  double tol) {
  std::vector<Verdict> out;
  std::int64_t expected_last = 1;
  while (1.0 / static_cast<double>(expected_last * expected_last) > tol) ++expected_last;

  {
    Verdict v{"epsilon column exact", true, ""};
    if (rows.empty() || rows.back().i != expected_last) {
      v.passed = false;
      v.detail = fmt::format("expected outer events i = 1..{}, got {}", expected_last, rows.size());
    }
    for (std::size_t j = 0; j < rows.size() && v.passed; ++j) {
      const auto& r = rows[j];
      const double exact = 1.0 / static_cast<double>(r.i * r.i);
      if (r.i != static_cast<std::int64_t>(j) + 1 || std::abs(r.epsilon - exact) > 1e-15 * exact) {
        v.passed = false;
        v.detail = fmt::format("row {}: i = {}, eps = {:.17g}", j, r.i, r.epsilon);
      }
    }
    for (std::int64_t i : {2, 3, 4, 5, 10}) {
      if (!v.passed || static_cast<std::size_t>(i) > rows.size()) break;
      const auto ref = std::find_if(table1_reference().begin(), table1_reference().end(),
                                    [&](const Table1Row& r) { return r.i == i; });
      const std::string got = fmt::format("{:.5f}", rows[static_cast<std::size_t>(i) - 1].epsilon);
      const std::string want = fmt::format("{:.5f}", ref->epsilon);
      if (got != want) {
        v.passed = false;
        v.detail = fmt::format("row {}: {} != {}", i, got, want);
      }
    }
    if (v.passed) v.detail = fmt::format("eps = 1/i^2 for i = 1..{}", expected_last);
    out.push_back(v);
  }

  const bool reached = termination == Termination::kTolReached && !rows.empty() && rows.back().epsilon <= tol;
  out.push_back({"tol reached before k_max", reached,
                 fmt::format("termination = {}", to_string(termination))});

  const double final_z = rows.empty() ? std::numeric_limits<double>::infinity() : rows.back().z_norm;
  out.push_back({"final ||z|| <= 2e-3", final_z <= 2e-3, fmt::format("final ||z|| = {:.3e}", final_z)});

  {
    Verdict v{"||z|| decreasing from i = 3 (slack 1.1)", true, "ok"};
    for (std::size_t j = 1; j < rows.size(); ++j) {
      if (rows[j - 1].i < 3) continue;
      if (rows[j].z_norm > 1.1 * rows[j - 1].z_norm) {
        v.passed = false;
        v.detail = fmt::format("i = {}: {:.3e} > 1.1 * {:.3e}", rows[j].i, rows[j].z_norm, rows[j - 1].z_norm);
        break;
      }
    }
    out.push_back(v);
  }

  Verdict k_verdict{"k within 30% of reference for i >= 5", true, ""};
  Verdict z_verdict{"||z|| within factor 2 of reference for i >= 5", true, ""};
  double worst_k = 0.0;
  double worst_z = 1.0;
  for (const auto& ref : table1_reference()) {
    if (ref.i < 5) continue;
    const auto it = std::find_if(rows.begin(), rows.end(), [&](const Table1Row& r) { return r.i == ref.i; });
    if (it == rows.end()) {
      k_verdict.passed = z_verdict.passed = false;
      k_verdict.detail = z_verdict.detail = fmt::format("row i = {} missing", ref.i);
      break;
    }
    const double k_dev = std::abs(static_cast<double>(it->k - ref.k)) / static_cast<double>(ref.k);
    const double z_ratio = std::max(it->z_norm / ref.z_norm, ref.z_norm / it->z_norm);
    worst_k = std::max(worst_k, k_dev);
    worst_z = std::max(worst_z, z_ratio);
    if (k_dev > 0.3) k_verdict.passed = false;
    if (!(z_ratio <= 2.0)) z_verdict.passed = false;
  }
  if (k_verdict.detail.empty()) k_verdict.detail = fmt::format("largest relative deviation {:.3f}", worst_k);
  if (z_verdict.detail.empty()) z_verdict.detail = fmt::format("largest ratio {:.3f}", worst_z);
  out.push_back(k_verdict);
  out.push_back(z_verdict);
  return out;
}

int cmd_solve(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RunConfig cfg = load_config(options, RunConfig{});
    if (!cfg.problem) throw ConfigError({"problem: required"});
    if (options.seed)
      if (auto* random = std::get_if<RandomFamilySpec>(&*cfg.problem)) random->seed = *options.seed;
    const NestedVIProblem problem = build_problem(*cfg.problem);
    const fs::path dir(cfg.output);

    json summary;
    int code = kExitOk;
    try {
      const SolveResult result = solve(problem, cfg.solver);
      write_file_atomic((dir / "trace.csv").string(), trace_csv(result.trace));
      write_file_atomic((dir / "events.csv").string(), events_csv(result.trace));
      summary = result_json(problem, result, cfg.solver.kind);
      for (const auto& w : result.warnings) err << "warning: " << w << "\n";
      if (!options.quiet)
        out << fmt::format("{}: {} after {} iterations, {} outer events\n", kind_name(cfg.solver.kind),
                           to_string(result.termination), result.iterations, result.outer_count);
    } catch (const SolverError& e) {
      write_file_atomic((dir / "trace.csv").string(), trace_csv(e.trace()));
      write_file_atomic((dir / "events.csv").string(), events_csv(e.trace()));
      summary["solver"] = kind_name(cfg.solver.kind);
      summary["termination"] = "solver_error";
      summary["error"] = e.what();
      summary["constants"] = constants_json(problem.constants());
      err << "solver error: " << e.what() << "\n";
      print_recent(err, e.recent());
      code = kExitSolver;
    }
    summary["timestamp"] = utc_timestamp();
    write_file_atomic((dir / "summary.json").string(), summary.dump(2) + "\n");
    if (!options.quiet) out << "wrote " << dir.string() << "/{trace.csv,events.csv,summary.json}\n";
    return code;
  });
}

int cmd_table1(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RunConfig cfg = load_config(options, table1_defaults());
    cfg.solver.kind = SolverKind::kPata;
    const NestedVIProblem problem = build_problem(cfg.problem.value_or(Rotation2dSpec{}));

    std::vector<Table1Row> rows;
    const SolveResult result = pata_solve(problem, cfg.solver, [&](const IterationRecord& r, const IterationView&) {
      if (r.outer_event) rows.push_back({r.i, r.k, r.epsilon, r.z_norm});
    });

    out << fmt::format("{:>4} {:>9} {:>9} {:>10}\n", "i", "k", "eps^k", "||z||_2");
    for (const auto& r : rows) out << fmt::format("{:>4} {:>9} {:>9.5f} {:>10.2e}\n", r.i, r.k, r.epsilon, r.z_norm);

    const auto verdicts = judge_table1(rows, result.termination, cfg.solver.tol);
    bool all = true;
    for (const auto& v : verdicts) {
      out << (v.passed ? "PASS " : "FAIL ") << v.name << ": " << v.detail << "\n";
      all = all && v.passed;
    }
    if (options.out_dir || options.config_path) {
      const fs::path dir(cfg.output);
      write_file_atomic((dir / "trace.csv").string(), trace_csv(result.trace));
      write_file_atomic((dir / "events.csv").string(), events_csv(result.trace));
      if (!options.quiet) out << "wrote " << dir.string() << "/{trace.csv,events.csv}\n";
    }
    return all ? kExitOk : kExitFailure;
  });
}

int cmd_compare(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_config(options, compare_defaults());
    if (cfg.solver.tikhonov.is_certificate()) throw ConfigError({"tikhonov: compare needs an outer schedule"});

    std::vector<PairOutcome> pairs;
    for (std::uint64_t seed : cfg.sweep.seeds)
      for (double zeta : cfg.sweep.zetas) {
        pairs.emplace_back();
        pairs.back().seed = seed;
        pairs.back().zeta = zeta;
      }

    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    auto worker = [&] {
      for (std::size_t j = next++; j < pairs.size(); j = next++) {
        try {
          run_pair(cfg, pairs[j]);
        } catch (const std::exception& e) {
          pairs[j].error = e.what();
        }
        if (!options.quiet) {
          std::lock_guard<std::mutex> lock(log_mutex);
          err << fmt::format("finished seed {} zeta {}\n", pairs[j].seed, zeta_tag(pairs[j].zeta));
        }
      }
    };
    const int jobs = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(pairs.size())));
    std::vector<std::thread> threads;
    for (int t = 1; t < jobs; ++t) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();

    json summary;
    summary["n"] = cfg.sweep.n;
    summary["k_max"] = cfg.solver.k_max;
    summary["lambda"] = cfg.solver.lambda;
    json list = json::array();
    int wins = 0;
    int failed = 0;
    out << fmt::format("{:>6} {:>6} {:>14} {:>14}  {}\n", "seed", "zeta", "pata", "baseline", "winner");
    for (const auto& p : pairs) {
      json e{{"seed", p.seed}, {"zeta", p.zeta}, {"monotonicity_defects", {{"upper", p.upper_defect}, {"lower", p.lower_defect}}},
             {"flagged", p.flagged}};
      if (!p.error.empty() || !p.pata || !p.baseline) {
        ++failed;
        e["error"] = p.error;
        out << fmt::format("{:>6} {:>6} error: {}\n", p.seed, zeta_tag(p.zeta), p.error);
      } else {
        const double a = final_measure(*p.pata);
        const double b = final_measure(*p.baseline);
        const bool win = a < b;
        wins += win ? 1 : 0;
        e["pata_final_measure"] = a;
        e["baseline_final_measure"] = b;
        e["pata_outer_count"] = p.pata->outer_count;
        e["baseline_outer_count"] = p.baseline->outer_count;
        e["pata_wins"] = win;
        out << fmt::format("{:>6} {:>6} {:>14.6e} {:>14.6e}  {}{}\n", p.seed, zeta_tag(p.zeta), a, b,
                           win ? "pata" : "baseline", p.flagged ? " (flagged)" : "");
      }
      list.push_back(e);
    }
    summary["pairs"] = list;
    summary["pata_wins"] = wins;
    summary["pair_count"] = pairs.size();
    summary["dominance_fraction"] = static_cast<double>(wins) / static_cast<double>(pairs.size());
    summary["timestamp"] = utc_timestamp();
    write_file_atomic((fs::path(cfg.output) / "summary.json").string(), summary.dump(2) + "\n");
    out << fmt::format("PATA below baseline in {}/{} pairs\n", wins, pairs.size());
    if (!options.quiet) out << "wrote " << cfg.output << "\n";
    return failed > 0 ? kExitSolver : kExitOk;
  });
}

int cmd_check(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    checks::CheckOptions opts;
    if (options.seed) opts.seed = *options.seed;
    const auto start = std::chrono::steady_clock::now();
    const auto results = checks::run_property_checks(opts);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    int passed = 0;
    for (const auto& r : results) {
      if (r.passed()) {
        ++passed;
        out << fmt::format("PASS {} ({} samples)\n", r.name, r.samples);
      } else {
        out << fmt::format("FAIL {} ({}/{} samples failed): {}\n", r.name, r.failures, r.samples, r.first_failure);
      }
    }
    out << fmt::format("{}/{} checks passed in {:.1f} s\n", passed, results.size(), secs);
    return passed == static_cast<int>(results.size()) ? kExitOk : kExitFailure;
  });
}

}  // namespace nvi::bench
