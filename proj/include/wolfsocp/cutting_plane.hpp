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
 * @file cutting_plane.hpp
 * @brief Analytic-center cutting-plane method on the dual SOCP.
 *
 * The localization polytope {z : aₖᵀz + bₖ ≤ 0} starts as the box
 * 0 ≤ λ_i ≤ λ_max, ‖v_i‖_∞ ≤ λ_max. Each iteration queries its analytic
 * center and adds either a feasibility cut (linearizing vᵀv − λ² at the most
 * violated block) or a neutral objective cut through the center.
 */
#pragma once

#include "wolfsocp/projection.hpp"
#include "wolfsocp/report.hpp"
#include "wolfsocp/socp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace wolfsocp {

struct Plane {
  Vector a;
  double b = 0.0;
  bool initial = false;
  /// For initialization planes, the coordinate the normal ±e_axis points along.
  int axis = -1;
};

/// Half-spaces aᵀz + b ≤ 0. Initialization planes are never pruned.
class PlaneSet {
 public:
  PlaneSet() = default;
  PlaneSet(int dim, int cap) : dim_(dim), cap_(cap) {}

  /// The 2L planes 0 ≤ λ_i ≤ λ_max followed by the 2mL planes |v_ij| ≤ λ_max.
  static PlaneSet initial_box(int m, int L, double lambda_max) {
    const int dim = (m + 1) * L;
    PlaneSet ps(dim, 5 * dim);
    for (int i = 0; i < L; ++i) {
      const int li = i * (m + 1) + m;
      ps.add_unit(li, -1.0, 0.0);
      ps.add_unit(li, 1.0, -lambda_max);
    }
    for (int i = 0; i < L; ++i) {
      for (int j = 0; j < m; ++j) {
        const int k = i * (m + 1) + j;
        ps.add_unit(k, 1.0, -lambda_max);
        ps.add_unit(k, -1.0, -lambda_max);
      }
    }
    return ps;
  }

  int dim() const { return dim_; }
  int cap() const { return cap_; }
  std::size_t size() const { return planes_.size(); }
  const std::vector<Plane>& planes() const { return planes_; }

  std::size_t num_initial() const {
    return static_cast<std::size_t>(std::count_if(planes_.begin(), planes_.end(), [](const Plane& p) { return p.initial; }));
  }

  /// Adds aᵀz + b ≤ 0, rescaled to ‖a‖ = 1 (the half-space and the analytic
  /// center are unchanged by positive scaling).
  void add(Vector a, double b, bool initial = false) {
    const double nrm = a.norm();
    if (nrm > 0.0) {
      a /= nrm;
      b /= nrm;
    }
    planes_.push_back(Plane{std::move(a), b, initial, -1});
  }

  void set_offset(std::size_t k, double b) { planes_[k].b = b; }

  void remove_if(const std::vector<bool>& drop) {
    std::size_t k = 0;
    for (std::size_t j = 0; j < planes_.size(); ++j) {
      if (!drop[j]) {
        if (k != j) planes_[k] = std::move(planes_[j]);
        ++k;
      }
    }
    planes_.resize(k);
  }

  /// Slacks −(aₖᵀz + bₖ).
  Vector slacks(const Vector& z) const {
    Vector s(static_cast<Eigen::Index>(planes_.size()));
    for (std::size_t k = 0; k < planes_.size(); ++k) s(static_cast<Eigen::Index>(k)) = -(planes_[k].a.dot(z) + planes_[k].b);
    return s;
  }

  Matrix normals() const {
    Matrix A(static_cast<Eigen::Index>(planes_.size()), dim_);
    for (std::size_t k = 0; k < planes_.size(); ++k) A.row(static_cast<Eigen::Index>(k)) = planes_[k].a.transpose();
    return A;
  }

 private:
  void add_unit(int index, double sign, double b) {
    Vector a = Vector::Zero(dim_);
    a(index) = sign;
    planes_.push_back(Plane{std::move(a), b, true, index});
  }

  int dim_ = 0;
  int cap_ = 0;
  std::vector<Plane> planes_;
};

struct CenterOptions {
  double grad_tol = 1e-6;
  /// Also stop once half the squared Newton decrement falls below this; 0 disables.
  double decrement_tol = 0.0;
  int max_iters = 200;
  /// Consecutive steps without a drop in the residual before giving up.
  int stall_limit = 20;
};

struct CenterResult {
  bool found = false;
  Vector z;
  double grad_norm = 0.0;
  int newton_steps = 0;
};

namespace detail {

inline double barrier(const Vector& s) {
  double v = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) v -= std::log(s(k));
  return v;
}

// Σ wₖ aₖaₖᵀ over the rows of A, with axis-aligned rows added on the diagonal.
inline Matrix weighted_gram(const PlaneSet& planes, const Matrix& A, const Vector& w) {
  const Eigen::Index np = A.rows();
  Eigen::Index first_dense = 0;
  while (first_dense < np && planes.planes()[static_cast<std::size_t>(first_dense)].axis >= 0) ++first_dense;
  const Eigen::Index nd = np - first_dense;
  Matrix H = Matrix::Zero(A.cols(), A.cols());
  if (nd > 0) {
    const Matrix Wa = w.tail(nd).cwiseSqrt().asDiagonal() * A.bottomRows(nd);
    H.selfadjointView<Eigen::Lower>().rankUpdate(Wa.transpose());
    H = H.selfadjointView<Eigen::Lower>();
  }
  for (Eigen::Index k = 0; k < first_dense; ++k) {
    const int ax = planes.planes()[static_cast<std::size_t>(k)].axis;
    H(ax, ax) += w(k);
  }
  return H;
}

}  // namespace detail

/// Approximate minimizer of −Σ log(−(aₖᵀz + bₖ)) by infeasible-start Newton.
///
/// Phase one carries slack variables y > 0 with the residual y + Az + b; a
/// full Newton step zeroes that residual, after which phase two runs damped
/// Newton on the barrier itself. `found == false` means the residual stopped
/// decreasing for `stall_limit` steps or the iteration budget ran out before
/// a strictly feasible point appeared.
inline CenterResult analytic_center(const PlaneSet& planes, const Vector& z_init, const CenterOptions& opts = {}) {
  CenterResult out;
  const Matrix A = planes.normals();
  Vector b(static_cast<Eigen::Index>(planes.size()));
  for (std::size_t k = 0; k < planes.size(); ++k) b(static_cast<Eigen::Index>(k)) = planes.planes()[k].b;
  const Eigen::Index np = A.rows();
  Vector z = z_init;

  // Phase one.
  Vector s = -(A * z + b);
  bool feasible = (s.array() > 0.0).all();
  if (!feasible) {
    double typical = 1.0;
    {
      std::vector<double> pos;
      for (Eigen::Index k = 0; k < np; ++k)
        if (s(k) > 0.0) pos.push_back(s(k));
      if (!pos.empty()) {
        std::nth_element(pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(pos.size() / 2), pos.end());
        typical = pos[pos.size() / 2];
      }
    }
    Vector y = s.unaryExpr([typical](double v) { return v > 0.0 ? v : typical; });
    Vector nu = y.cwiseInverse();
    auto residual = [&](const Vector& yy, const Vector& zz, const Vector& nn) {
      const Vector r1 = nn - yy.cwiseInverse();
      const Vector r2 = A.transpose() * nn;
      const Vector r3 = yy + A * zz + b;
      return std::sqrt(r1.squaredNorm() + r2.squaredNorm() + r3.squaredNorm());
    };
    double res = residual(y, z, nu);
    double best = res;
    int stall = 0;
    for (int it = 0; it < opts.max_iters; ++it) {
      ++out.newton_steps;
      const Vector r = y + A * z + b;
      const Vector d = y.cwiseInverse().cwiseAbs2();
      const Matrix H = detail::weighted_gram(planes, A, d);
      const Vector rhs = -(A.transpose() * (y.cwiseInverse() + d.cwiseProduct(r)));
      Eigen::LDLT<Matrix> ldlt(H);
      const Vector dz = ldlt.solve(rhs);
      if (!dz.allFinite()) break;
      const Vector dy = -r - A * dz;
      const Vector nu_plus = y.cwiseInverse() - d.cwiseProduct(dy);
      const Vector dnu = nu_plus - nu;
      double t = 1.0;
      while (t > 1e-12 && ((y + t * dy).array() <= 0.0).any()) t *= 0.5;
      while (t > 1e-12 && residual(y + t * dy, z + t * dz, nu + t * dnu) > (1.0 - 0.01 * t) * res) t *= 0.5;
      y += t * dy;
      z += t * dz;
      nu += t * dnu;
      res = residual(y, z, nu);
      s = -(A * z + b);
      if ((s.array() > 0.0).all() && t == 1.0) {
        feasible = true;
        break;
      }
      if (res < best * (1.0 - 1e-9)) {
        best = res;
        stall = 0;
      } else if (++stall >= opts.stall_limit) {
        break;
      }
    }
    if (!feasible) {
      s = -(A * z + b);
      feasible = (s.array() > 0.0).all();
    }
    if (!feasible) {
      out.z = z;
      return out;
    }
  }

  // Phase two: damped Newton on the barrier from a strictly feasible point.
  double phi = detail::barrier(s);
  for (int it = out.newton_steps; it < opts.max_iters; ++it) {
    const Vector inv_s = s.cwiseInverse();
    const Vector grad = A.transpose() * inv_s;
    out.grad_norm = grad.norm();
    if (out.grad_norm <= opts.grad_tol) break;
    ++out.newton_steps;
    const Matrix H = detail::weighted_gram(planes, A, inv_s.cwiseAbs2());
    Eigen::LLT<Matrix> llt(H);
    const Vector dz = -llt.solve(grad);
    const double dec = -grad.dot(dz);
    if (!(dec > 1e-24) || 0.5 * dec <= opts.decrement_tol) break;
    const Vector Adz = A * dz;
    double t = 1.0;
    while (t > 1e-14 && ((s - t * Adz).array() <= 0.0).any()) t *= 0.5;
    Vector s_new = s - t * Adz;
    double phi_new = detail::barrier(s_new);
    while (t > 1e-14 && phi_new > phi - 0.01 * t * dec) {
      t *= 0.5;
      s_new = s - t * Adz;
      phi_new = (s_new.array() > 0.0).all() ? detail::barrier(s_new) : std::numeric_limits<double>::infinity();
    }
    if (t <= 1e-14) break;
    z += t * dz;
    s = -(A * z + b);
    phi = detail::barrier(s);
  }
  out.grad_norm = (A.transpose() * s.cwiseInverse()).norm();
  out.found = true;
  out.z = z;
  return out;
}

namespace detail {

// Block with the largest w_i = v_iᵀv_i − λ_i², or -1 when none is positive.
inline int most_violated_block(const Vector& z, int m, double* w_out) {
  const int L = static_cast<int>(z.size()) / (m + 1);
  int j = -1;
  double wj = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < L; ++i) {
    const int s = i * (m + 1);
    const double w = z.segment(s, m).squaredNorm() - z(s + m) * z(s + m);
    if (w > wj) {
      wj = w;
      j = i;
    }
  }
  *w_out = wj;
  return wj > 0.0 ? j : -1;
}

}  // namespace detail

enum class FeasibilityCutRule {
  /// a = (2v_j, −2‖v_j‖) in block j, b = 0: the supporting half-space of the
  /// cone {‖v_j‖ ≤ λ_j} at the radial projection of z. Valid for every
  /// dual-feasible point.
  Supporting,
  /// a = (2v_j, −2λ_j), b = w_j − aᵀz: the first-order expansion of
  /// vᵀv − λ² at z. Since vᵀv − λ² is not convex this plane can remove
  /// feasible points with large λ_j; kept for comparison only.
  Linearized,
};

/// Feasibility cut at the block j maximizing w_i = v_iᵀv_i − λ_i². Returns
/// nothing when every w_i ≤ 0.
inline std::optional<Plane> feasibility_cut(const Vector& z, int m,
                                            FeasibilityCutRule rule = FeasibilityCutRule::Supporting) {
  double wj = 0.0;
  const int j = detail::most_violated_block(z, m, &wj);
  if (j < 0) return std::nullopt;
  Plane pl;
  pl.a = Vector::Zero(z.size());
  const int s = j * (m + 1);
  pl.a.segment(s, m) = 2.0 * z.segment(s, m);
  if (rule == FeasibilityCutRule::Linearized) {
    pl.a(s + m) = -2.0 * z(s + m);
    pl.b = wj - pl.a.dot(z);
  } else {
    pl.a(s + m) = -2.0 * z.segment(s, m).norm();
    pl.b = 0.0;
  }
  return pl;
}

/// Neutral objective cut ∇g(z)ᵀ(z' − z) ≤ 0.
inline Plane objective_cut(const DualSocp& dual, const Vector& z) {
  Plane pl;
  pl.a = dual.gradient(z);
  pl.b = -pl.a.dot(z);
  return pl;
}

struct CuttingPlaneOptions {
  int max_iters = 2000;
  double delta0 = 1e-6;
  FeasibilityCutRule cut_rule = FeasibilityCutRule::Supporting;
  CenterOptions center{1e-6, 1e-4, 60, 20};
  /// Wall-clock budget in seconds; 0 disables it. Exhausting it is a failure.
  double time_limit = 0.0;
};

/// Drops redundant or least relevant cuts until the set fits its cap.
/// Relevance of cut k at the center is sₖ / ‖H^{-1/2}aₖ‖ with H the barrier
/// Hessian; cuts with relevance ≥ number of planes are provably redundant.
inline void prune_planes(PlaneSet& planes, const Vector& center) {
  const std::size_t np = planes.size();
  const Vector s = planes.slacks(center);
  if (!(s.array() > 0.0).all()) return;
  const Matrix A = planes.normals();
  const Matrix H = detail::weighted_gram(planes, A, s.cwiseInverse().cwiseAbs2());
  Eigen::LLT<Matrix> llt(H);
  if (llt.info() != Eigen::Success) return;

  std::vector<std::pair<double, std::size_t>> rel;
  for (std::size_t k = 0; k < np; ++k) {
    if (planes.planes()[k].initial) continue;
    const Vector hk = llt.solve(planes.planes()[k].a);
    const double q = std::sqrt(std::max(planes.planes()[k].a.dot(hk), 0.0));
    rel.emplace_back(q > 0.0 ? s(static_cast<Eigen::Index>(k)) / q : std::numeric_limits<double>::infinity(), k);
  }
  std::vector<bool> drop(np, false);
  std::size_t remaining = np;
  for (const auto& [eta, k] : rel) {
    if (eta >= static_cast<double>(np)) {
      drop[k] = true;
      --remaining;
    }
  }
  if (remaining > static_cast<std::size_t>(planes.cap())) {
    std::sort(rel.begin(), rel.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    for (const auto& [eta, k] : rel) {
      if (remaining <= static_cast<std::size_t>(planes.cap())) break;
      if (!drop[k]) {
        drop[k] = true;
        --remaining;
      }
    }
  }
  planes.remove_if(drop);
}

namespace detail {

// Re-centers after `cut` is appended to `planes`, starting from the previous
// center zc. Any point with ‖z − zc‖_H < 1 is strictly inside the old planes,
// so a cut of depth r = (aᵀzc + b)/‖a‖_{H⁻¹} < 1 admits a strictly feasible
// start inside that ellipsoid. Deeper cuts are approached by relaxing the
// offset to depth 1/2, centering, and tightening again.
inline CenterResult recenter(PlaneSet& planes, const Plane& cut, const Vector& zc, const CenterOptions& opts) {
  constexpr int kMaxRelax = 60;
  CenterResult out;
  Vector z = zc;
  const double nrm = cut.a.norm();
  const Vector a = cut.a / nrm;
  const double b = cut.b / nrm;
  planes.add(a, b);
  const std::size_t last = planes.size() - 1;
  for (int k = 0; k < kMaxRelax; ++k) {
    // Hessian of the barrier of the old planes only.
    const Vector s = planes.slacks(z);
    Vector w = s.cwiseInverse().cwiseAbs2();
    w(static_cast<Eigen::Index>(last)) = 0.0;
    const Matrix H = detail::weighted_gram(planes, planes.normals(), w);
    Eigen::LLT<Matrix> llt(H);
    if (llt.info() != Eigen::Success || !(s.head(static_cast<Eigen::Index>(last)).array() > 0.0).all()) break;
    const Vector Hia = llt.solve(a);
    const double qa = std::sqrt(std::max(a.dot(Hia), 0.0));
    if (!(qa > 0.0)) break;
    const double r = (a.dot(z) + b) / qa;
    if (r < 0.9) {
      planes.set_offset(last, b);
      CenterResult c = analytic_center(planes, z - (std::max(0.0, 0.5 * (r + 1.0)) / qa) * Hia, opts);
      c.newton_steps += out.newton_steps;
      return c;
    }
    // Shift the plane so z sits at depth 1/2, center, and try again.
    planes.set_offset(last, b - (r - 0.5) * qa);
    CenterResult c = analytic_center(planes, z - (0.75 / qa) * Hia, opts);
    out.newton_steps += c.newton_steps;
    if (!c.found) break;
    z = std::move(c.z);
  }
  planes.set_offset(last, b);
  CenterResult c = analytic_center(planes, z, opts);
  c.newton_steps += out.newton_steps;
  return c;
}

}  // namespace detail

/// Queries analytic centers of the localization polytope and certifies at
/// the projection of each center onto the dual feasible set; the best
/// certified point is returned.
inline SolveReport cutting_plane_solve(const DualSocp& dual, const CuttingPlaneOptions& opts,
                                       const Vector& z0 = Vector()) {
  Stopwatch clock;
  SolveReport rep;
  const int dim = dual.dim();
  PlaneSet planes = PlaneSet::initial_box(dual.m, dual.L, dual.lambda_max);
  Vector z = z0.size() == dim ? z0 : Vector::Zero(dim);

  // The start point is certified before any cut is made.
  Vector best = project_dual(z, dual.m, dual.lambda_max);
  double best_delta = suboptimality(dual, DualPoint(best, dual.m)).delta;
  rep.final_delta = best_delta;
  auto finish = [&](bool fail) {
    rep.fail = fail;
    rep.z_star = DualPoint(best, dual.m);
    rep.final_delta = best_delta;
    rep.wall_time = clock.seconds();
    return rep;
  };
  if (best_delta < opts.delta0) return finish(false);
  {
    CenterResult c = analytic_center(planes, z, opts.center);
    rep.inner_iters += c.newton_steps;
    if (c.found) z = std::move(c.z);
    const Vector zp = project_dual(z, dual.m, dual.lambda_max);
    const double d = suboptimality(dual, DualPoint(zp, dual.m)).delta;
    if (d < best_delta) {
      best_delta = d;
      best = zp;
    }
    if (best_delta < opts.delta0) return finish(false);
  }

  for (int t = 0; t < opts.max_iters; ++t) {
    rep.outer_iters = t + 1;
    Plane cut;
    if (auto fc = feasibility_cut(z, dual.m, opts.cut_rule)) {
      cut = std::move(*fc);
    } else {
      cut = objective_cut(dual, z);
    }
    CenterResult c = detail::recenter(planes, cut, z, opts.center);
    rep.inner_iters += c.newton_steps;
    if (!c.found) return finish(true);
    z = std::move(c.z);
    const Vector zp = project_dual(z, dual.m, dual.lambda_max);
    const double d = suboptimality(dual, DualPoint(zp, dual.m)).delta;
    if (d < best_delta) {
      best_delta = d;
      best = zp;
    }
    if (best_delta < opts.delta0) return finish(false);
    if (opts.time_limit > 0.0 && clock.seconds() > opts.time_limit) return finish(true);
    if (planes.size() > static_cast<std::size_t>(planes.cap())) prune_planes(planes, z);
    rep.max_active = std::max(rep.max_active, static_cast<int>(planes.size()));
  }
  return finish(true);
}

}  // namespace wolfsocp
