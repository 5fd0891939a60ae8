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
 * @file quadrotor.hpp
 * @brief Near-hover 12-state quadrotor model.
 *
 * State x = [p; v; η; ω] with position p, velocity v, ZYX Euler angles
 * η = (φ, θ, ψ) and body rates ω. Control u = (ω_cmd; T) holds the commanded
 * roll, pitch and yaw rates and the collective thrust input.
 *
 *   ṗ = v
 *   v̇ = (k_T T / m) R(η) e₃ − g e₃
 *   η̇ = W(φ, θ) ω
 *   ω̇ = (ω_cmd − ω) ⊘ τ
 *
 * with R(η) e₃ the body z axis in the world frame and W the Euler-rate
 * kinematic matrix. Time is discretized by explicit Euler, x⁺ = x + f(x,u)·dt.
 */
#pragma once

#include "wolfsocp/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace wolfsocp {

inline constexpr int kStateDim = 12;
inline constexpr int kControlDim = 4;

using State = Eigen::Matrix<double, kStateDim, 1>;
using Control = Eigen::Matrix<double, kControlDim, 1>;
using StateMatrix = Eigen::Matrix<double, kStateDim, kStateDim>;
using InputMatrix = Eigen::Matrix<double, kStateDim, kControlDim>;

struct QuadParams {
  double gravity = 9.81;
  double mass = 1.0;
  double thrust_gain = 1.0;
  Eigen::Vector3d tau{0.1, 0.1, 0.2};
  double dt = 0.03;

  double hover_thrust() const { return mass * gravity / thrust_gain; }

  void validate() const {
    if (!(dt >= 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be non-negative");
    if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
    if (!(thrust_gain > 0.0)) throw std::invalid_argument("thrust_gain must be positive");
    if (!(tau.array() > 0.0).all()) throw std::invalid_argument("attitude time constants must be positive");
  }
};

namespace detail {

inline Eigen::Vector3d body_z(double phi, double theta, double psi) {
  const double cf = std::cos(phi), sf = std::sin(phi);
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cp = std::cos(psi), sp = std::sin(psi);
  return {cp * st * cf + sp * sf, sp * st * cf - cp * sf, ct * cf};
}

inline Eigen::Matrix3d euler_rate_matrix(double phi, double theta) {
  const double cf = std::cos(phi), sf = std::sin(phi);
  const double ct = std::cos(theta), tt = std::tan(theta);
  Eigen::Matrix3d W;
  W << 1.0, sf * tt, cf * tt,
       0.0, cf, -sf,
       0.0, sf / ct, cf / ct;
  return W;
}

}  // namespace detail

inline State dynamics(const State& x, const Control& u, const QuadParams& params) {
  State dx;
  const double phi = x(6), theta = x(7), psi = x(8);
  const Eigen::Vector3d omega = x.segment<3>(9);
  dx.segment<3>(0) = x.segment<3>(3);
  dx.segment<3>(3) = (params.thrust_gain * u(3) / params.mass) * detail::body_z(phi, theta, psi);
  dx(5) -= params.gravity;
  dx.segment<3>(6) = detail::euler_rate_matrix(phi, theta) * omega;
  dx.segment<3>(9) = (u.head<3>() - omega).cwiseQuotient(params.tau);
  return dx;
}

inline State step(const State& x, const Control& u, const QuadParams& params) {
  return x + params.dt * dynamics(x, u, params);
}

struct Jacobians {
  StateMatrix fx;
  InputMatrix fu;
};

/// Analytic ∂f/∂x and ∂f/∂u.
inline Jacobians jacobians(const State& x, const Control& u, const QuadParams& params) {
  Jacobians J;
  J.fx.setZero();
  J.fu.setZero();
  const double phi = x(6), theta = x(7), psi = x(8);
  const double w2 = x(10), w3 = x(11);
  const double cf = std::cos(phi), sf = std::sin(phi);
  const double ct = std::cos(theta), st = std::sin(theta), tt = std::tan(theta);
  const double cp = std::cos(psi), sp = std::sin(psi);
  const double a = params.thrust_gain * u(3) / params.mass;

  J.fx.block<3, 3>(0, 3).setIdentity();

  J.fx.block<3, 1>(3, 6) = a * Eigen::Vector3d(-cp * st * sf + sp * cf, -sp * st * sf - cp * cf, -ct * sf);
  J.fx.block<3, 1>(3, 7) = a * Eigen::Vector3d(cp * ct * cf, sp * ct * cf, -st * cf);
  J.fx.block<3, 1>(3, 8) = a * Eigen::Vector3d(-sp * st * cf + cp * sf, cp * st * cf + sp * sf, 0.0);
  J.fu.block<3, 1>(3, 3) = (params.thrust_gain / params.mass) * detail::body_z(phi, theta, psi);

  const double sec2 = 1.0 / (ct * ct);
  J.fx.block<3, 1>(6, 6) = Eigen::Vector3d(cf * tt * w2 - sf * tt * w3, -sf * w2 - cf * w3, (cf * w2 - sf * w3) / ct);
  J.fx.block<3, 1>(6, 7) = Eigen::Vector3d((sf * w2 + cf * w3) * sec2, 0.0, (sf * w2 + cf * w3) * st * sec2);
  J.fx.block<3, 3>(6, 9) = detail::euler_rate_matrix(phi, theta);

  for (int k = 0; k < 3; ++k) {
    J.fx(9 + k, 9 + k) = -1.0 / params.tau(k);
    J.fu(9 + k, k) = 1.0 / params.tau(k);
  }
  return J;
}

/// One-step affine model x⁺ ≈ x + A x + B u + c, all terms scaled by dt.
struct LinearizedDynamics {
  StateMatrix A;
  InputMatrix B;
  State c;
};

inline LinearizedDynamics linearize(const State& x0, const Control& u0, const QuadParams& params) {
  const Jacobians J = jacobians(x0, u0, params);
  LinearizedDynamics lin;
  lin.A = params.dt * J.fx;
  lin.B = params.dt * J.fu;
  lin.c = params.dt * dynamics(x0, u0, params) - lin.A * x0 - lin.B * u0;
  return lin;
}

}  // namespace wolfsocp
