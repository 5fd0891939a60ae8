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

#include "wolfsocp/projection.hpp"
#include "wolfsocp/report.hpp"
#include "wolfsocp/socp.hpp"

#include <stdexcept>

namespace wolfsocp {

/// Projected gradient descent with Armijo backtracking.
struct PgdConfig {
  /// Starting step of every backtracking search; 0 selects 1/(2‖U‖²).
  double initial_step = 0.0;
  double armijo_shrink = 0.5;
  double armijo_slope = 1e-4;
  int max_iters = 200000;
  double delta0 = 1e-6;

  void validate() const {
    if (initial_step < 0.0) throw std::invalid_argument("initial_step must be non-negative");
    if (!(armijo_shrink > 0.0 && armijo_shrink < 1.0)) throw std::invalid_argument("armijo_shrink must lie in (0,1)");
    if (!(armijo_slope > 0.0 && armijo_slope < 1.0)) throw std::invalid_argument("armijo_slope must lie in (0,1)");
    if (max_iters < 1) throw std::invalid_argument("max_iters must be positive");
    if (!(delta0 > 0.0)) throw std::invalid_argument("delta0 must be positive");
  }
};

inline double default_pgd_step(const DualSocp& dual) {
  const double s = spectral_norm_sq_estimate(dual.U);
  return s > 0.0 ? 1.0 / (2.0 * s) : 1.0;
}

inline SolveReport pgd_solve(const DualSocp& dual, const PgdConfig& config, const Vector& z0 = Vector()) {
  config.validate();
  Stopwatch clock;
  SolveReport rep;
  const int dim = dual.dim();
  const double eta0 = config.initial_step > 0.0 ? config.initial_step : default_pgd_step(dual);

  Vector z = z0.size() == dim ? project_dual(z0, dual.m, dual.lambda_max) : Vector::Zero(dim);
  Vector Uz = dual.U * z;
  double g = Uz.squaredNorm() + dual.p.dot(z);

  for (int k = 0; k < config.max_iters; ++k) {
    rep.outer_iters = k + 1;
    const Suboptimality sub = suboptimality_from_dual(dual, z, Uz, dual.p.dot(z));
    rep.final_delta = sub.delta;
    if (sub.delta < config.delta0) {
      rep.fail = false;
      break;
    }
    const Vector grad = 2.0 * (dual.U.transpose() * Uz) + dual.p;
    double eta = eta0;
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      ++rep.inner_iters;
      Vector trial = project_dual(z - eta * grad, dual.m, dual.lambda_max);
      Vector Ut = dual.U * trial;
      const double gt = Ut.squaredNorm() + dual.p.dot(trial);
      if (gt <= g + config.armijo_slope * grad.dot(trial - z)) {
        moved = (trial != z);
        z = std::move(trial);
        Uz = std::move(Ut);
        g = gt;
        break;
      }
      eta *= config.armijo_shrink;
    }
    if (!moved) {
      // Projection fixed point at every tried step: nothing left to gain.
      rep.final_delta = suboptimality_from_dual(dual, z, Uz, dual.p.dot(z)).delta;
      rep.fail = !(rep.final_delta < config.delta0);
      break;
    }
  }
  rep.z_star = DualPoint(z, dual.m);
  rep.wall_time = clock.seconds();
  return rep;
}

}  // namespace wolfsocp
