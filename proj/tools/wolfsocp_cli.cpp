// Copyright 2026 The wolfsocp Authors
//
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

// wolfsocp command line: solve, fly, bench, capture and sense.
//
// Exit codes: 0 success, 1 usage or input error, 2 solver failure,
// 3 infeasible mission, 4 mission step limit.

#include "wolfsocp/wolfsocp.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace wolfsocp;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSolverFail = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitStepLimit = 4;

struct SolveArgs {
  std::string input;
  std::string solver = "wolfe";
  double precision = 1e-6;
  std::string warm_start;
  std::string report;
  std::string solution;
  int max_iters = 0;
  double time_limit = 0.0;
  bool reproducible = false;
};

struct FlyArgs {
  std::string scenario;
  std::string config;
  std::string out;
  bool reproducible = false;
};

struct BenchArgs {
  std::string spec;
  std::string input;
  std::vector<std::string> solvers{"wolfe", "pgd", "cpm"};
  std::vector<double> precisions{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  int repeats = 5;
  double cpm_time_limit = 0.0;
  std::string out;
  bool reproducible = false;
};

struct CaptureArgs {
  std::string traj;
  int step = 0;
  std::string scenario;
  std::string config;
  std::string out;
};

struct SenseArgs {
  std::string scenario;
  std::string config;
  std::vector<double> position;
  std::string out;
};

MissionConfig load_config(const std::string& path) {
  return path.empty() ? MissionConfig{} : mission_config_from_json(read_json_file(path));
}

int run_solve(const SolveArgs& a) {
  const ProblemFile pf = problem_from_json(read_json_file(a.input));
  const DualSocp dual = transform_to_dual(pf.primal, pf.lambda_max);
  Vector z0;
  if (!a.warm_start.empty()) {
    z0 = vector_from_json(read_json_file(a.warm_start), "warm start");
    if (z0.size() != dual.dim())
      throw FormatError("warm start has " + std::to_string(z0.size()) + " entries, expected " +
                        std::to_string(dual.dim()));
  }
  SolverLimits limits;
  if (a.max_iters > 0) {
    limits.wolfe_max_outer = a.max_iters;
    limits.pgd_max_iters = a.max_iters;
    limits.cpm_max_iters = a.max_iters;
  }
  limits.cpm_time_limit = a.time_limit;
  SolveReport rep = run_solver(parse_solver(a.solver), dual, a.precision, limits, z0);
  if (a.reproducible) rep.wall_time = 0.0;

  const Json rj = to_json(rep);
  if (!a.report.empty()) write_json_file(a.report, rj);
  if (!a.solution.empty()) write_json_file(a.solution, to_json(rep.z_star.z()));
  std::cout << rj.dump() << "\n";
  std::cout << "objective " << format_double(primal_objective(pf.primal, dual, rep.z_star)) << "\n";
  return rep.fail ? kExitSolverFail : kExitOk;
}

int run_fly(const FlyArgs& a) {
  const Obstacle obstacle = obstacle_from_json(read_json_file(a.scenario));
  const MissionConfig cfg = load_config(a.config);
  const Trajectory traj = fly(obstacle, cfg.planner, cfg.quad);
  if (!a.out.empty()) write_text_file(a.out, trajectory_csv(traj, a.reproducible));

  std::cout << "status " << to_string(traj.status) << "\n";
  std::cout << "steps " << traj.steps.size() << "\n";
  if (!traj.steps.empty()) {
    MissionMetrics m = replay_metrics(traj);
    if (a.reproducible) m = MissionMetrics{m.steps};
    std::cout << "total_s " << format_double(m.total_s) << "\nsense_s " << format_double(m.sense_s)
              << "\ntransform_s " << format_double(m.transform_s) << "\nopt_s " << format_double(m.opt_s) << "\n";
  }
  if (traj.failed_step) {
    std::cout << "failed_step " << traj.failed_step->t << "\nfailed_delta "
              << format_double(traj.failed_step->report.final_delta) << "\n";
  }
  switch (traj.status) {
    case MissionStatus::ReachedGoal: return kExitOk;
    case MissionStatus::Infeasible: return kExitInfeasible;
    case MissionStatus::StepLimit: return kExitStepLimit;
  }
  return kExitOk;
}

int run_bench(const BenchArgs& a) {
  if (a.spec.empty() == a.input.empty()) throw CLI::ValidationError("bench", "give exactly one of --spec or --input");
  PrimalSocp primal;
  BenchOptions opts;
  if (!a.spec.empty()) {
    primal = gen_synthetic(synthetic_spec_from_json(read_json_file(a.spec)));
  } else {
    const ProblemFile pf = problem_from_json(read_json_file(a.input));
    primal = pf.primal;
    opts.lambda_max = pf.lambda_max;
  }
  std::vector<SolverKind> solvers;
  for (const std::string& s : a.solvers) solvers.push_back(parse_solver(s));
  opts.repeats = a.repeats;
  opts.limits.cpm_time_limit = a.cpm_time_limit;
  const BenchReport report = bench(primal, solvers, a.precisions, opts);
  const std::string csv = bench_csv(report, a.reproducible);
  if (!a.out.empty()) write_text_file(a.out, csv);
  std::cout << csv;
  return kExitOk;
}

int run_capture(const CaptureArgs& a) {
  std::ifstream in(a.traj);
  if (!in) throw FormatError("cannot open " + a.traj);
  const Trajectory traj = read_trajectory_csv(in);
  const Obstacle obstacle = obstacle_from_json(read_json_file(a.scenario));
  const MissionConfig cfg = load_config(a.config);
  if (a.step < 0) throw std::out_of_range("step index must be non-negative");
  const CapturedStep cap =
      capture_subproblem(traj, static_cast<std::size_t>(a.step), obstacle, cfg.planner, cfg.quad);
  write_json_file(a.out, problem_document(cap.primal, cfg.planner.lambda_max));
  std::cout << "captured step " << a.step << ": n=" << cap.primal.n() << " m=" << cap.primal.m()
            << " L=" << cap.primal.num_cones() << "\n";
  return kExitOk;
}

int run_sense(const SenseArgs& a) {
  const Obstacle obstacle = obstacle_from_json(read_json_file(a.scenario));
  const MissionConfig cfg = load_config(a.config);
  const Point3 pos(a.position.at(0), a.position.at(1), a.position.at(2));
  const SensingResult s = sense_two_level(pos, obstacle, cfg.planner.grids);
  const std::string csv = sensing_csv(s);
  if (!a.out.empty()) write_text_file(a.out, csv);
  std::cout << "samples " << s.y.size() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wolfe-based SOCP solver and quadrotor mission planner"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve a problem file");
  solve->add_option("--input", solve_args.input, "Problem JSON")->required()->check(CLI::ExistingFile);
  solve->add_option("--solver", solve_args.solver, "wolfe, pgd or cpm")
      ->check(CLI::IsMember({"wolfe", "pgd", "cpm"}));
  solve->add_option("--precision", solve_args.precision, "Target sub-optimality")->check(CLI::PositiveNumber);
  solve->add_option("--warm-start", solve_args.warm_start, "Dual start point, JSON array")->check(CLI::ExistingFile);
  solve->add_option("--report", solve_args.report, "Write the solve report JSON here");
  solve->add_option("--solution", solve_args.solution, "Write the dual solution JSON here");
  solve->add_option("--max-iters", solve_args.max_iters, "Outer iteration budget")->check(CLI::PositiveNumber);
  solve->add_option("--time-limit", solve_args.time_limit, "Cutting-plane time budget in seconds");
  solve->add_flag("--reproducible", solve_args.reproducible, "Write timings as zero");

  FlyArgs fly_args;
  auto* flyc = app.add_subcommand("fly", "Fly a mission through a scenario");
  flyc->add_option("--scenario", fly_args.scenario, "Obstacle JSON")->required()->check(CLI::ExistingFile);
  flyc->add_option("--config", fly_args.config, "Mission configuration JSON")->check(CLI::ExistingFile);
  flyc->add_option("--out", fly_args.out, "Trajectory CSV");
  flyc->add_flag("--reproducible", fly_args.reproducible, "Write timings as zero");

  BenchArgs bench_args;
  auto* benchc = app.add_subcommand("bench", "Time solvers across precisions");
  benchc->add_option("--spec", bench_args.spec, "Synthetic instance JSON {n, L, seed}")->check(CLI::ExistingFile);
  benchc->add_option("--input", bench_args.input, "Problem JSON instead of a synthetic instance")
      ->check(CLI::ExistingFile);
  benchc->add_option("--solvers", bench_args.solvers, "Comma separated solvers")->delimiter(',');
  benchc->add_option("--precisions", bench_args.precisions, "Comma separated targets")->delimiter(',');
  benchc->add_option("--repeats", bench_args.repeats, "Timed runs per cell")->check(CLI::PositiveNumber);
  benchc->add_option("--cpm-time-limit", bench_args.cpm_time_limit, "Cutting-plane budget per run, seconds");
  benchc->add_option("--out", bench_args.out, "Report CSV");
  benchc->add_flag("--reproducible", bench_args.reproducible, "Write timings as zero");

  CaptureArgs cap_args;
  auto* capc = app.add_subcommand("capture", "Extract one mission step as a problem file");
  capc->add_option("--traj", cap_args.traj, "Trajectory CSV written by fly")->required()->check(CLI::ExistingFile);
  capc->add_option("--step", cap_args.step, "Step index, 0 for the first step")->required();
  capc->add_option("--scenario", cap_args.scenario, "Scenario the mission flew")->required()->check(CLI::ExistingFile);
  capc->add_option("--config", cap_args.config, "Configuration the mission used")->check(CLI::ExistingFile);
  capc->add_option("--out", cap_args.out, "Problem JSON")->required();

  SenseArgs sense_args;
  auto* sensec = app.add_subcommand("sense", "Dump the labeled boundary samples seen from a position");
  sensec->add_option("--scenario", sense_args.scenario, "Obstacle JSON")->required()->check(CLI::ExistingFile);
  sensec->add_option("--config", sense_args.config, "Configuration with sensing grids")->check(CLI::ExistingFile);
  sensec->add_option("--position", sense_args.position, "x,y,z")->required()->delimiter(',')->expected(3);
  sensec->add_option("--out", sense_args.out, "Samples CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve) return run_solve(solve_args);
    if (*flyc) return run_fly(fly_args);
    if (*benchc) return run_bench(bench_args);
    if (*capc) return run_capture(cap_args);
    if (*sensec) return run_sense(sense_args);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
