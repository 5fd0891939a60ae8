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

/**
 * @file bench.hpp
 * @brief Synthetic problems, a uniform solver front end, timing sweeps and
 * extraction of single mission steps as standalone problems.
 */
#pragma once

#include "wolfsocp/cutting_plane.hpp"
#include "wolfsocp/pgd.hpp"
#include "wolfsocp/planner.hpp"
#include "wolfsocp/rng.hpp"
#include "wolfsocp/wolfe.hpp"

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wolfsocp {

/// Random instance family: square Gaussian B_i, Gaussian c_i and p̂,
/// b_i = 0 and d_i = 10, so û = 0 is strictly feasible.
struct SyntheticSpec {
  int n = 10;
  int L = 2;
  std::uint64_t seed = 0;

  void validate() const {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (L < 1) throw std::invalid_argument("L must be at least 1");
  }
};

/// Draw order: p̂, then for each block B_i row by row followed by c_i.
inline PrimalSocp gen_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  GaussianRng rng(spec.seed);
  PrimalSocp prob;
  prob.p_hat.resize(spec.n);
  for (int k = 0; k < spec.n; ++k) prob.p_hat(k) = rng.normal();
  prob.blocks.resize(static_cast<std::size_t>(spec.L));
  for (ConeBlock& blk : prob.blocks) {
    blk.B.resize(spec.n, spec.n);
    for (int r = 0; r < spec.n; ++r)
      for (int c = 0; c < spec.n; ++c) blk.B(r, c) = rng.normal();
    blk.c.resize(spec.n);
    for (int k = 0; k < spec.n; ++k) blk.c(k) = rng.normal();
    blk.b = Vector::Zero(spec.n);
    blk.d = 10.0;
  }
  return prob;
}

enum class SolverKind { Wolfe, Pgd, CuttingPlane };

inline std::string_view to_string(SolverKind s) {
  switch (s) {
    case SolverKind::Wolfe: return "wolfe";
    case SolverKind::Pgd: return "pgd";
    case SolverKind::CuttingPlane: return "cpm";
  }
  return "unknown";
}

inline SolverKind parse_solver(std::string_view name) {
  if (name == "wolfe") return SolverKind::Wolfe;
  if (name == "pgd") return SolverKind::Pgd;
  if (name == "cpm") return SolverKind::CuttingPlane;
  throw std::invalid_argument("unknown solver '" + std::string(name) + "' (expected wolfe, pgd or cpm)");
}

/// Iteration and time budgets shared by every front-end call.
struct SolverLimits {
  int wolfe_max_outer = 1000;
  int pgd_max_iters = 200000;
  int cpm_max_iters = 20000;
  /// Seconds; 0 means unlimited.
  double cpm_time_limit = 0.0;
};

inline SolveReport run_solver(SolverKind kind, const DualSocp& dual, double precision, const SolverLimits& limits = {},
                              const Vector& z0 = Vector()) {
  if (!(precision > 0.0)) throw std::invalid_argument("precision must be positive");
  switch (kind) {
    case SolverKind::Wolfe: {
      WolfeOptions o;
      o.max_outer = limits.wolfe_max_outer;
      o.delta0 = precision;
      return wolfe_solve(dual, o, z0);
    }
    case SolverKind::Pgd: {
      PgdConfig c;
      c.max_iters = limits.pgd_max_iters;
      c.delta0 = precision;
      return pgd_solve(dual, c, z0);
    }
    case SolverKind::CuttingPlane: {
      CuttingPlaneOptions o;
      o.max_iters = limits.cpm_max_iters;
      o.delta0 = precision;
      o.time_limit = limits.cpm_time_limit;
      return cutting_plane_solve(dual, o, z0);
    }
  }
  throw std::invalid_argument("unknown solver kind");
}

/// Primal objective ‖û + p̂/2‖² at the point recovered from a dual solution.
inline double primal_objective(const PrimalSocp& primal, const DualSocp& dual, const DualPoint& z) {
  return primal.objective(recover_primal(dual, z, primal.p_hat));
}

struct BenchRow {
  SolverKind solver = SolverKind::Wolfe;
  double precision = 0.0;
  /// Solver failure, or a recomputed δ above the target.
  bool fail = true;
  /// Median over the repetitions.
  double seconds = 0.0;
  int outer_iters = 0;
  int inner_iters = 0;
  /// δ re-evaluated from the primal blocks, not taken from the solver.
  double delta = 0.0;
  double objective = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
};

struct BenchOptions {
  int repeats = 5;
  SolverLimits limits;
  double lambda_max = kDefaultLambdaMax;
};

inline double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of an empty sample");
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

/// Every (solver, precision) cell solves from z = 0 `repeats` times. The
/// dual is formed once, outside the timed region.
inline BenchReport bench(const PrimalSocp& primal, std::span<const SolverKind> solvers,
                         std::span<const double> precisions, const BenchOptions& opts = {}) {
  if (solvers.empty()) throw std::invalid_argument("bench needs at least one solver");
  if (opts.repeats < 1) throw std::invalid_argument("repeats must be positive");
  primal.validate();
  const DualSocp dual = transform_to_dual(primal, opts.lambda_max);

  BenchReport report;
  for (const SolverKind s : solvers) {
    for (const double prec : precisions) {
      std::vector<double> times;
      SolveReport first;
      for (int r = 0; r < opts.repeats; ++r) {
        SolveReport rep = run_solver(s, dual, prec, opts.limits);
        times.push_back(rep.wall_time);
        if (r == 0) first = std::move(rep);
      }
      BenchRow row;
      row.solver = s;
      row.precision = prec;
      row.seconds = median(std::move(times));
      row.outer_iters = first.outer_iters;
      row.inner_iters = first.inner_iters;
      row.delta = suboptimality(primal, dual, first.z_star).delta;
      row.objective = primal_objective(primal, dual, first.z_star);
      row.fail = first.fail || !(row.delta <= prec);
      report.rows.push_back(row);
    }
  }
  return report;
}

/// One mission step rebuilt as a standalone problem.
struct CapturedStep {
  std::size_t step = 0;
  PrimalSocp primal;
  DualSocp dual;
  /// The dual solution the mission handed to this step.
  Vector warm_start;
};

/// Rebuilds the SOCP solved at `step` from the recorded state and previous
/// control. Throws std::out_of_range for a bad index and
/// std::invalid_argument when nothing was sensed at that step.
inline CapturedStep capture_subproblem(const Trajectory& traj, std::size_t step, const Obstacle& obstacle,
                                       const PlannerConfig& config, const QuadParams& params) {
  config.validate();
  const StepInputs in = step_inputs(traj, step);
  const std::optional<GpBelief> belief = sense_belief(in.state, obstacle, config);
  if (!belief) throw std::invalid_argument("step " + std::to_string(step) + " has no cone constraints");
  CapturedStep out;
  out.step = step;
  out.primal = build_step_problem(in.state, in.prev_control, belief, config, params).primal;
  out.dual = transform_to_dual(out.primal, config.lambda_max);
  out.warm_start = in.warm_start;
  return out;
}

}  // namespace wolfsocp
