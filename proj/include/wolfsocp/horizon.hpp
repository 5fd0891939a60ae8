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
 * @file horizon.hpp
 * @brief Receding-horizon chance-constrained problem as a standard-form SOCP.
 *
 * The L-step linear rollout x̃ = Āũ + b̄ eliminates the states. The quadratic
 * tracking cost x̃ᵀDx̃ + qᵀx̃ becomes ‖Vũ + p̂/2‖² up to a constant with
 * V = (ĀᵀDĀ)^{1/2}, and the per-step chance constraints become cones in
 * û = Vũ.
 */
#pragma once

#include "wolfsocp/gp_sensing.hpp"
#include "wolfsocp/quadrotor.hpp"
#include "wolfsocp/socp.hpp"

#include <optional>
#include <stdexcept>

namespace wolfsocp {

struct TrackingWeights {
  double velocity = 0.2;  // λ₀, also applied to body rates
  double attitude = 2.0;  // μ₀
};

/// Diagonal of D for one step: [1,1,1, λ₀,λ₀,λ₀, μ₀,μ₀,μ₀, λ₀,λ₀,λ₀].
inline State step_weights(const TrackingWeights& w) {
  State d;
  d << 1.0, 1.0, 1.0, w.velocity, w.velocity, w.velocity, w.attitude, w.attitude, w.attitude, w.velocity,
      w.velocity, w.velocity;
  return d;
}

/// The stacked recursion A₁x̃ + A₂ũ + b₁ = 0, formed explicitly.
struct StackedDynamics {
  Matrix A1;
  Matrix A2;
  Vector b1;
};

inline StackedDynamics stack_dynamics(const LinearizedDynamics& lin, const State& x0, int L) {
  if (L < 1) throw std::invalid_argument("horizon must be at least 1");
  const int nx = kStateDim, nu = kControlDim;
  StackedDynamics s;
  s.A1 = Matrix::Zero(nx * L, nx * L);
  s.A2 = Matrix::Zero(nx * L, nu * L);
  s.b1 = Vector::Zero(nx * L);
  const StateMatrix IA = StateMatrix::Identity() + lin.A;
  for (int k = 0; k < L; ++k) {
    s.A1.block(nx * k, nx * k, nx, nx) = -StateMatrix::Identity();
    if (k > 0) s.A1.block(nx * k, nx * (k - 1), nx, nx) = IA;
    s.A2.block(nx * k, nu * k, nx, nu) = lin.B;
    s.b1.segment(nx * k, nx) = lin.c;
  }
  s.b1.head(nx) += IA * x0;
  return s;
}

struct HorizonTransform {
  int L = 0;
  LinearizedDynamics lin;
  Matrix Abar;  // 12L × 4L
  Vector bbar;  // 12L
  Vector D;     // diagonal, 12L
  Vector q;     // 12L
  Matrix V;
  Matrix V_inv;
  Vector p_hat;
  /// D was shifted by a multiple of the identity to make V invertible.
  bool regularized = false;

  int num_controls() const { return kControlDim * L; }

  /// F̃(ũ) = ũᵀĀᵀDĀũ + (2ĀᵀDb̄ + Āᵀq)ᵀũ.
  double reduced_cost(const Vector& u_tilde) const {
    const Vector Au = Abar * u_tilde;
    return Au.dot(D.asDiagonal() * Au) + (2.0 * Abar.transpose() * D.asDiagonal() * bbar + Abar.transpose() * q).dot(u_tilde);
  }
};

/// Ā and b̄ by block forward substitution on x^{k+1} = (I + A)x^k + Bu^{k+1} + c.
inline void rollout_maps(const LinearizedDynamics& lin, const State& x0, int L, Matrix& Abar, Vector& bbar) {
  const int nx = kStateDim, nu = kControlDim;
  const StateMatrix IA = StateMatrix::Identity() + lin.A;
  Abar = Matrix::Zero(nx * L, nu * L);
  bbar.resize(nx * L);
  bbar.head(nx) = IA * x0 + lin.c;
  Abar.block(0, 0, nx, nu) = lin.B;
  for (int k = 1; k < L; ++k) {
    bbar.segment(nx * k, nx) = IA * bbar.segment(nx * (k - 1), nx) + lin.c;
    Abar.block(nx * k, 0, nx, nu * k) = IA * Abar.block(nx * (k - 1), 0, nx, nu * k);
    Abar.block(nx * k, nu * k, nx, nu) = lin.B;
  }
}

struct HorizonProblem {
  PrimalSocp primal;
  HorizonTransform transform;
};

/// Builds the horizon SOCP linearized at (x0, u0). Without a belief the
/// problem has no cone blocks.
inline HorizonProblem build_horizon_socp(const State& x0, const Control& u0, const Point3& goal,
                                         const std::optional<GpBelief>& belief, int L, const TrackingWeights& weights,
                                         double eps, const QuadParams& params) {
  if (L < 1) throw std::invalid_argument("horizon must be at least 1");
  params.validate();
  if (belief) check_failure_probability(eps);
  const int nx = kStateDim;
  HorizonProblem out;
  HorizonTransform& T = out.transform;
  T.L = L;
  T.lin = linearize(x0, u0, params);
  rollout_maps(T.lin, x0, L, T.Abar, T.bbar);

  const State dstep = step_weights(weights);
  T.D.resize(nx * L);
  T.q = Vector::Zero(nx * L);
  for (int k = 0; k < L; ++k) {
    T.D.segment(nx * k, nx) = dstep;
    T.q.segment(nx * k, 3) = -2.0 * goal;
  }

  Matrix G = T.Abar.transpose() * T.D.asDiagonal() * T.Abar;
  SymmetricRoot root = symmetric_root(G);
  if (root.min_ratio < 1e-10) {
    const double shift = 1e-10 * T.D.sum() / (nx * L);
    T.D.array() += shift;
    T.regularized = true;
    G = T.Abar.transpose() * T.D.asDiagonal() * T.Abar;
    root = symmetric_root(G);
  }
  T.V = std::move(root.root);
  T.V_inv = std::move(root.inv_root);
  const Vector lin_term = 2.0 * T.Abar.transpose() * (T.D.asDiagonal() * T.bbar) + T.Abar.transpose() * T.q;
  T.p_hat = T.V_inv * lin_term;

  out.primal.p_hat = T.p_hat;
  if (belief) {
    const ChanceCone cone = chance_cone(*belief, eps);
    out.primal.blocks.reserve(static_cast<std::size_t>(L));
    for (int k = 0; k < L; ++k) {
      const Matrix Apos = T.Abar.middleRows(nx * k, 3) * T.V_inv;  // position rows in û
      const Eigen::Vector3d bpos = T.bbar.segment<3>(nx * k);
      ConeBlock blk;
      blk.B = cone.H * Apos;
      blk.b = cone.H * bpos + cone.h;
      blk.c = Apos.transpose() * cone.mu_bar;
      blk.d = cone.mu_bar.dot(bpos) + cone.mu_bar4;
      out.primal.blocks.push_back(std::move(blk));
    }
  }
  return out;
}

/// ũ* = −V⁻¹(p̂/2 + Uz*). With no cone blocks pass an empty z.
inline Vector extract_controls(const Vector& z_star, const HorizonTransform& transform, const Matrix& U) {
  Vector w = 0.5 * transform.p_hat;
  if (z_star.size() > 0) w += U * z_star;
  return -(transform.V_inv * w);
}

}  // namespace wolfsocp
