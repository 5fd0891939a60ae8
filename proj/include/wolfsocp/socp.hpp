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
 * @file socp.hpp
 * @brief Primal and dual SOCP representations.
 *
 * Primal problem over û ∈ ℝⁿ:
 *
 *     min ‖û + p̂/2‖²   s.t.  ‖B_i û + b_i‖ ≤ c_iᵀû + d_i,  i = 1..L
 *
 * Dual problem over z = [v₁; λ₁; …; v_L; λ_L] ∈ ℝ^{(m+1)L}:
 *
 *     min ‖Uz‖² + pᵀz   s.t.  ‖v_i‖ ≤ λ_i ≤ λ_max
 *
 * with U = ½[B₁ᵀ, −c₁, …, B_Lᵀ, −c_L] and p = Uᵀp̂ − [b₁; −d₁; …; b_L; −d_L].
 * A dual point maps back to the primal through û = −(p̂/2 + Uz).
 */
#pragma once

#include "wolfsocp/linalg.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace wolfsocp {

inline constexpr double kDefaultLambdaMax = 1e4;

/// Raised on inconsistent problem dimensions. `block` is -1 when the
/// offending item is not a cone block.
class DimensionError : public std::invalid_argument {
 public:
  DimensionError(const std::string& what, int block = -1)
      : std::invalid_argument(what), block_(block) {}
  int block() const { return block_; }

 private:
  int block_;
};

/// One cone constraint ‖B x + b‖ ≤ cᵀx + d.
struct ConeBlock {
  Matrix B;
  Vector b;
  Vector c;
  double d = 0.0;
};

struct PrimalSocp {
  Vector p_hat;
  std::vector<ConeBlock> blocks;

  int n() const { return static_cast<int>(p_hat.size()); }
  int m() const { return blocks.empty() ? 0 : static_cast<int>(blocks.front().B.rows()); }
  int num_cones() const { return static_cast<int>(blocks.size()); }

  /// Throws DimensionError naming the first inconsistent block.
  void validate() const {
    if (p_hat.size() < 1) throw DimensionError("p_hat must have n >= 1 entries");
    if (blocks.empty()) throw DimensionError("problem needs at least one cone block");
    const Eigen::Index mm = blocks.front().B.rows();
    if (mm < 1) throw DimensionError("cone block 0 has m = 0 rows", 0);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      const auto& blk = blocks[i];
      const int bi = static_cast<int>(i);
      const std::string tag = "cone block " + std::to_string(i) + ": ";
      if (blk.B.rows() != mm)
        throw DimensionError(tag + "B has " + std::to_string(blk.B.rows()) + " rows, expected " +
                                 std::to_string(mm),
                             bi);
      if (blk.B.cols() != p_hat.size())
        throw DimensionError(tag + "B has " + std::to_string(blk.B.cols()) + " columns, expected n = " +
                                 std::to_string(p_hat.size()),
                             bi);
      if (blk.b.size() != mm) throw DimensionError(tag + "b length differs from m", bi);
      if (blk.c.size() != p_hat.size()) throw DimensionError(tag + "c length differs from n", bi);
    }
  }

  /// ‖û + p̂/2‖².
  double objective(const Vector& u_hat) const { return (u_hat + 0.5 * p_hat).squaredNorm(); }

  /// ‖B_i û + b_i‖ − (c_iᵀû + d_i); non-positive iff cone i holds.
  double cone_residual(int i, const Vector& u_hat) const {
    const auto& blk = blocks[static_cast<std::size_t>(i)];
    return (blk.B * u_hat + blk.b).norm() - (blk.c.dot(u_hat) + blk.d);
  }
};

/// Dual data. `p_hat` and `offsets` = [b₁; −d₁; …] are kept so primal
/// quantities can be recovered without the original blocks.
struct DualSocp {
  Matrix U;
  Vector p;
  Vector p_hat;
  Vector offsets;
  int L = 0;
  int m = 0;
  double lambda_max = kDefaultLambdaMax;

  int n() const { return static_cast<int>(U.rows()); }
  int dim() const { return (m + 1) * L; }
  int block_start(int i) const { return i * (m + 1); }

  double objective(const Vector& z) const { return (U * z).squaredNorm() + p.dot(z); }
  Vector gradient(const Vector& z) const { return 2.0 * (U.transpose() * (U * z)) + p; }
};

/// Dual variable laid out as [v₁; λ₁; v₂; λ₂; …].
class DualPoint {
 public:
  DualPoint() = default;
  DualPoint(Vector z, int m) : z_(std::move(z)), m_(m) {}

  static DualPoint zero(int m, int L) { return DualPoint(Vector::Zero((m + 1) * L), m); }

  const Vector& z() const { return z_; }
  Vector& z() { return z_; }
  int m() const { return m_; }
  int num_blocks() const { return m_ >= 0 && z_.size() > 0 ? static_cast<int>(z_.size()) / (m_ + 1) : 0; }

  auto v(int i) const { return z_.segment(static_cast<Eigen::Index>(i) * (m_ + 1), m_); }
  double lambda(int i) const { return z_(static_cast<Eigen::Index>(i) * (m_ + 1) + m_); }

  /// ‖v_i‖ ≤ λ_i ≤ λ_max for every block, with absolute slack `tol`.
  bool feasible(double lambda_max, double tol = 0.0) const {
    for (int i = 0; i < num_blocks(); ++i) {
      const double lam = lambda(i);
      if (v(i).norm() > lam + tol || lam > lambda_max + tol) return false;
    }
    return true;
  }

 private:
  Vector z_;
  int m_ = 0;
};

inline DualSocp transform_to_dual(const PrimalSocp& primal, double lambda_max = kDefaultLambdaMax) {
  primal.validate();
  if (!(lambda_max > 0.0)) throw std::invalid_argument("lambda_max must be positive");
  const int n = primal.n();
  const int m = primal.m();
  const int L = primal.num_cones();
  DualSocp dual;
  dual.L = L;
  dual.m = m;
  dual.lambda_max = lambda_max;
  dual.p_hat = primal.p_hat;
  dual.U.resize(n, (m + 1) * L);
  dual.offsets.resize((m + 1) * L);
  for (int i = 0; i < L; ++i) {
    const auto& blk = primal.blocks[static_cast<std::size_t>(i)];
    const int s = i * (m + 1);
    dual.U.middleCols(s, m) = 0.5 * blk.B.transpose();
    dual.U.col(s + m) = -0.5 * blk.c;
    dual.offsets.segment(s, m) = blk.b;
    dual.offsets(s + m) = -blk.d;
  }
  dual.p = dual.U.transpose() * primal.p_hat - dual.offsets;
  return dual;
}

/// û = −(p̂/2 + Uz).
inline Vector recover_primal(const DualSocp& dual, const DualPoint& z, const Vector& p_hat) {
  if (z.z().size() != dual.dim())
    throw DimensionError("dual point has length " + std::to_string(z.z().size()) + ", expected " +
                         std::to_string(dual.dim()));
  if (p_hat.size() != dual.n()) throw DimensionError("p_hat length differs from n");
  return -(0.5 * p_hat + dual.U * z.z());
}

struct Suboptimality {
  double f_p = 0.0;
  double d_gap = 0.0;
  Vector I_p;
  Vector I_d;
  double delta = 0.0;
};

namespace detail {

// The three normalized terms combined into δ. `cone_rhs` holds c_iᵀû + d_i.
inline double combine_delta(double f_p, double d_gap, const Vector& I_p, const Vector& cone_rhs,
                            const Vector& I_d, const Vector& lambdas) {
  double delta = d_gap / (std::abs(f_p) + 1.0);
  if (I_p.size() > 0) {
    delta = std::max(delta, I_p.maxCoeff() / (cone_rhs.cwiseAbs().maxCoeff() + 1.0));
    delta = std::max(delta, I_d.maxCoeff() / (lambdas.cwiseAbs().maxCoeff() + 1.0));
  }
  return delta;
}

}  // namespace detail

/// Sub-optimality evaluated from the original cone blocks. This is the
/// reference path: it touches B_i, b_i, c_i, d_i directly and only uses U
/// to recover û.
inline Suboptimality suboptimality(const PrimalSocp& primal, const DualSocp& dual, const DualPoint& z) {
  const Vector Uz = dual.U * z.z();
  const Vector u_hat = recover_primal(dual, z, primal.p_hat);
  const int L = primal.num_cones();
  Suboptimality s;
  s.f_p = Uz.squaredNorm();
  s.d_gap = 2.0 * s.f_p + dual.p.dot(z.z());
  s.I_p.resize(L);
  s.I_d.resize(L);
  Vector rhs(L), lambdas(L);
  for (int i = 0; i < L; ++i) {
    const auto& blk = primal.blocks[static_cast<std::size_t>(i)];
    rhs(i) = blk.c.dot(u_hat) + blk.d;
    s.I_p(i) = (blk.B * u_hat + blk.b).norm() - rhs(i);
    s.I_d(i) = z.v(i).norm() - z.lambda(i);
    lambdas(i) = z.lambda(i);
  }
  s.delta = detail::combine_delta(s.f_p, s.d_gap, s.I_p, rhs, s.I_d, lambdas);
  return s;
}

/// Same quantities computed from the dual data and a precomputed Uz, using
/// B_i = 2·U_vᵀ and c_i = −2·U_λ. Used inside the solvers where Uz is cached.
inline Suboptimality suboptimality_from_dual(const DualSocp& dual, const Vector& z, const Vector& Uz,
                                             double pz) {
  const Vector u_hat = -(0.5 * dual.p_hat + Uz);
  const Vector w = 2.0 * (dual.U.transpose() * u_hat);
  const int L = dual.L;
  const int m = dual.m;
  Suboptimality s;
  s.f_p = Uz.squaredNorm();
  s.d_gap = 2.0 * s.f_p + pz;
  s.I_p.resize(L);
  s.I_d.resize(L);
  Vector rhs(L), lambdas(L);
  for (int i = 0; i < L; ++i) {
    const int st = i * (m + 1);
    // B_i û + b_i = w_v + offsets_v, c_iᵀû + d_i = −w_λ − offsets_λ.
    rhs(i) = -w(st + m) - dual.offsets(st + m);
    s.I_p(i) = (w.segment(st, m) + dual.offsets.segment(st, m)).norm() - rhs(i);
    lambdas(i) = z(st + m);
    s.I_d(i) = z.segment(st, m).norm() - lambdas(i);
  }
  s.delta = detail::combine_delta(s.f_p, s.d_gap, s.I_p, rhs, s.I_d, lambdas);
  return s;
}

inline Suboptimality suboptimality(const DualSocp& dual, const DualPoint& z) {
  const Vector Uz = dual.U * z.z();
  return suboptimality_from_dual(dual, z.z(), Uz, dual.p.dot(z.z()));
}

}  // namespace wolfsocp
