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

#pragma once

#include "wolfsocp/gp_sensing.hpp"
#include "wolfsocp/horizon.hpp"
#include "wolfsocp/report.hpp"
#include "wolfsocp/wolfe.hpp"

#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace wolfsocp {

struct PlannerConfig {
  State start = State::Zero();
  State goal = (State() << 1.0, 1.0, 0.0, 0, 0, 0, 0, 0, 0, 0, 0, 0).finished();
  double eps = 0.01;
  double stop_radius = 0.01;
  int horizon = 20;
  double lambda_max = kDefaultLambdaMax;
  int max_socp_iters = 1000;
  double precision = 1e-4;
  double dt = 0.03;
  TrackingWeights weights;
  int max_steps = 5000;
  double ridge = 0.5;
  SenseGrid grids;

  void validate() const {
    if (!(stop_radius > 0.0)) throw std::invalid_argument("stop_radius must be positive");
    if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
    if (!(lambda_max > 0.0)) throw std::invalid_argument("lambda_max must be positive");
    if (max_socp_iters < 1) throw std::invalid_argument("max_socp_iters must be positive");
    if (!(precision > 0.0)) throw std::invalid_argument("precision must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (max_steps < 1) throw std::invalid_argument("max_steps must be positive");
    if (!(ridge > 0.0)) throw std::invalid_argument("ridge must be positive");
    check_failure_probability(eps);
    grids.validate();
  }
};

struct StepRecord {
  int t = 0;
  /// State the step was planned from.
  State state = State::Zero();
  /// Control applied from that state.
  Control control = Control::Zero();
  SolveReport report;
  /// Number of labeled boundary samples; 0 when nothing was sensed.
  int sensed = 0;
  double sense_s = 0.0;
  double transform_s = 0.0;
  double opt_s = 0.0;
};

enum class MissionStatus { ReachedGoal, Infeasible, StepLimit };

inline std::string_view to_string(MissionStatus s) {
  switch (s) {
    case MissionStatus::ReachedGoal: return "reached_goal";
    case MissionStatus::Infeasible: return "infeasible";
    case MissionStatus::StepLimit: return "step_limit";
  }
  return "unknown";
}

struct Trajectory {
  std::vector<StepRecord> steps;
  State final_state = State::Zero();
  MissionStatus status = MissionStatus::StepLimit;
  /// The step whose solve failed, for Infeasible missions.
  std::optional<StepRecord> failed_step;
};

/// Linearization point and warm start of step `t`: the previous applied
/// control (zero at t = 0) and the previous dual solution.
struct StepInputs {
  State state;
  Control prev_control;
  Vector warm_start;
};

inline StepInputs step_inputs(const Trajectory& traj, std::size_t t) {
  if (t >= traj.steps.size()) throw std::out_of_range("step index out of range");
  StepInputs in;
  in.state = traj.steps[t].state;
  in.prev_control = t == 0 ? Control::Zero() : traj.steps[t - 1].control;
  in.warm_start = t == 0 ? Vector() : traj.steps[t - 1].report.z_star.z();
  return in;
}

/// Sensing and belief for one state; nullopt when nothing is in range.
inline std::optional<GpBelief> sense_belief(const State& x, const Obstacle& obstacle, const PlannerConfig& config,
                                            int* sensed = nullptr) {
  const SensingResult s = sense_two_level(x.head<3>(), obstacle, config.grids);
  if (sensed) *sensed = static_cast<int>(s.y.size());
  if (s.empty()) return std::nullopt;
  return gp_posterior(s.Z, s.y, config.ridge);
}

inline QuadParams with_step(QuadParams params, double dt) {
  params.dt = dt;
  return params;
}

inline HorizonProblem build_step_problem(const State& x, const Control& u_prev, const std::optional<GpBelief>& belief,
                                         const PlannerConfig& config, const QuadParams& params) {
  return build_horizon_socp(x, u_prev, config.goal.head<3>(), belief, config.horizon, config.weights, config.eps,
                            with_step(params, config.dt));
}

/// Receding-horizon flight: sense, fit the belief, build and solve the
/// horizon SOCP warm-started from the previous dual solution, and apply the
/// first control to the nonlinear model.
inline Trajectory fly(const Obstacle& obstacle, const PlannerConfig& config, const QuadParams& base_params) {
  config.validate();
  const QuadParams params = with_step(base_params, config.dt);
  params.validate();
  WolfeOptions wopts;
  wopts.max_outer = config.max_socp_iters;
  wopts.delta0 = config.precision;

  Trajectory traj;
  State x = config.start;
  Control u = Control::Zero();
  Vector z;
  const Point3 goal = config.goal.head<3>();

  for (int t = 0;; ++t) {
    if ((x.head<3>() - goal).norm() < config.stop_radius) {
      traj.status = MissionStatus::ReachedGoal;
      break;
    }
    if (t >= config.max_steps) {
      traj.status = MissionStatus::StepLimit;
      break;
    }
    StepRecord rec;
    rec.t = t;
    rec.state = x;

    Stopwatch sense_clock;
    const std::optional<GpBelief> belief = sense_belief(x, obstacle, config, &rec.sensed);
    rec.sense_s = sense_clock.seconds();

    Stopwatch transform_clock;
    const HorizonProblem prob = build_step_problem(x, u, belief, config, params);
    rec.transform_s = transform_clock.seconds();

    Stopwatch opt_clock;
    Vector u_tilde;
    if (prob.primal.blocks.empty()) {
      rec.report.fail = false;
      rec.report.final_delta = 0.0;
      z = Vector();
      u_tilde = extract_controls(z, prob.transform, Matrix());
    } else {
      const DualSocp dual = transform_to_dual(prob.primal, config.lambda_max);
      rec.report = wolfe_solve(dual, wopts, z);
      if (rec.report.fail) {
        rec.opt_s = opt_clock.seconds();
        traj.failed_step = std::move(rec);
        traj.status = MissionStatus::Infeasible;
        break;
      }
      z = rec.report.z_star.z();
      u_tilde = extract_controls(z, prob.transform, dual.U);
    }
    rec.opt_s = opt_clock.seconds();

    rec.control = u_tilde.head<kControlDim>();
    u = rec.control;
    x = step(x, u, params);
    traj.steps.push_back(std::move(rec));
  }
  traj.final_state = x;
  return traj;
}

struct MissionMetrics {
  int steps = 0;
  double total_s = 0.0;
  double sense_s = 0.0;
  double transform_s = 0.0;
  double opt_s = 0.0;
};

inline MissionMetrics replay_metrics(const Trajectory& traj) {
  if (traj.steps.empty()) throw std::invalid_argument("replay_metrics needs a non-empty trajectory");
  MissionMetrics m;
  for (const StepRecord& r : traj.steps) {
    m.sense_s += r.sense_s;
    m.transform_s += r.transform_s;
    m.opt_s += r.opt_s;
  }
  m.steps = static_cast<int>(traj.steps.size());
  m.total_s = m.sense_s + m.transform_s + m.opt_s;
  return m;
}

}  // namespace wolfsocp
