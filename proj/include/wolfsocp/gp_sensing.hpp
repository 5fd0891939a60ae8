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
 * @file gp_sensing.hpp
 * @brief Synthetic obstacles, grid sensing and the linear Gaussian-process
 *        boundary belief.
 *
 * A belief is a Gaussian N(μ, Σ) over the coefficients n of a separating
 * hyperplane nᵀ[ξ; 1] in world coordinates, with positive values inside the
 * obstacle. Requiring ℙ[nᵀξ̄ < 0] ≥ 1 − ε gives the deterministic condition
 *
 *   μᵀξ̄ − Φ⁻¹(ε)‖Σ^{1/2}ξ̄‖ ≤ 0,
 *
 * a second-order cone in ξ whenever ε < 1/2.
 */
#pragma once

#include "wolfsocp/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace wolfsocp {

using Point3 = Eigen::Vector3d;

// ---------------------------------------------------------------------------
// Obstacles

/// Everything with z ≥ height.
struct Ceiling {
  double height = 0.0;
};

/// {p : normalᵀp ≥ offset}.
struct HalfSpace {
  Point3 normal = Point3::UnitZ();
  double offset = 0.0;
};

/// Slab of the given thickness around the plane through `origin` with unit
/// `normal`, extending without bound from `origin` along `extent` (in-plane)
/// and vertically.
struct HalfWall {
  Point3 origin = Point3::Zero();
  Point3 normal = Point3::UnitX();
  Point3 extent = Point3::UnitY();
  double thickness = 0.1;
};

/// Ground bump: inside iff z ≤ base + peak·exp(−r²/(2σ²)), r the horizontal
/// distance to `center`.
struct Hill {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double peak = 0.2;
  double width = 0.2;
  double base = -0.05;
};

/// Infinite cylinder around the line through `point` along `axis`.
struct Cylinder {
  Point3 point = Point3::Zero();
  Point3 axis = Point3::UnitZ();
  double radius = 0.1;
};

/// Planar shapes, extruded along z.
struct Circle2D {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double radius = 0.1;
};

struct Triangle2D {
  Eigen::Vector2d a = Eigen::Vector2d::Zero();
  Eigen::Vector2d b = Eigen::Vector2d::UnitX();
  Eigen::Vector2d c = Eigen::Vector2d::UnitY();
};

using Obstacle = std::variant<Ceiling, HalfSpace, HalfWall, Hill, Cylinder, Circle2D, Triangle2D>;

namespace detail {

inline double cross2(const Eigen::Vector2d& u, const Eigen::Vector2d& v) { return u.x() * v.y() - u.y() * v.x(); }

struct Membership {
  const Point3& p;

  bool operator()(const Ceiling& o) const { return p.z() >= o.height; }
  bool operator()(const HalfSpace& o) const { return o.normal.dot(p) >= o.offset; }
  bool operator()(const HalfWall& o) const {
    const Point3 r = p - o.origin;
    const Point3 n = o.normal.normalized();
    return std::abs(n.dot(r)) <= 0.5 * o.thickness && o.extent.dot(r) >= 0.0;
  }
  bool operator()(const Hill& o) const {
    const double r2 = (p.head<2>() - o.center).squaredNorm();
    return p.z() <= o.base + o.peak * std::exp(-r2 / (2.0 * o.width * o.width));
  }
  bool operator()(const Cylinder& o) const {
    const Point3 a = o.axis.normalized();
    const Point3 r = p - o.point;
    return (r - a.dot(r) * a).norm() <= o.radius;
  }
  bool operator()(const Circle2D& o) const { return (p.head<2>() - o.center).norm() <= o.radius; }
  bool operator()(const Triangle2D& o) const {
    const Eigen::Vector2d q = p.head<2>();
    const double d1 = cross2(o.b - o.a, q - o.a);
    const double d2 = cross2(o.c - o.b, q - o.b);
    const double d3 = cross2(o.a - o.c, q - o.c);
    const bool neg = d1 < 0.0 || d2 < 0.0 || d3 < 0.0;
    const bool pos = d1 > 0.0 || d2 > 0.0 || d3 > 0.0;
    return !(neg && pos);
  }
};

}  // namespace detail

inline bool inside(const Point3& p, const Obstacle& obstacle) { return std::visit(detail::Membership{p}, obstacle); }

/// +1 inside the obstacle, −1 outside.
inline int obstacle_oracle(const Point3& p, const Obstacle& obstacle) { return inside(p, obstacle) ? 1 : -1; }

// ---------------------------------------------------------------------------
// Grid sensing

/// Offsets −k·spacing … k·spacing with k = round(half_width / spacing), on
/// each axis.
struct GridAxis {
  double half_width = 0.0;
  double spacing = 1.0;

  std::vector<double> offsets() const {
    const int k = static_cast<int>(std::lround(half_width / spacing));
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(2 * k + 1));
    for (int i = -k; i <= k; ++i) out.push_back(i * spacing);
    return out;
  }
};

struct SenseGrid {
  GridAxis coarse{0.3, 0.06};
  GridAxis refine{0.06, 0.02};
  GridAxis boundary{0.04, 0.01};

  void validate() const {
    for (const GridAxis* g : {&coarse, &refine, &boundary}) {
      if (!(g->spacing > 0.0) || !(g->half_width >= 0.0)) throw std::invalid_argument("grid spacing must be positive");
    }
  }
};

struct SensingResult {
  /// Rows [ξᵀ, 1] of the boundary grid, world coordinates.
  Matrix Z;
  Vector y;
  std::optional<Point3> nearest;

  bool empty() const { return Z.rows() == 0; }
};

namespace detail {

// Closest in-obstacle point of the cube grid around `center` to `from`.
// Ties keep the first point in x-major order.
inline std::optional<Point3> nearest_hit(const Point3& from, const Point3& center, const GridAxis& axis,
                                         const Obstacle& obstacle) {
  const std::vector<double> off = axis.offsets();
  std::optional<Point3> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (double dx : off) {
    for (double dy : off) {
      for (double dz : off) {
        const Point3 q = center + Point3(dx, dy, dz);
        if (!inside(q, obstacle)) continue;
        const double d = (q - from).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = q;
        }
      }
    }
  }
  return best;
}

}  // namespace detail

/// Coarse search, refined search around the coarse hit, then labels on the
/// boundary grid around the refined hit. Empty when the coarse search sees
/// nothing.
inline SensingResult sense_two_level(const Point3& position, const Obstacle& obstacle, const SenseGrid& grids = {}) {
  SensingResult out;
  out.Z.resize(0, 4);
  out.y.resize(0);
  const auto coarse = detail::nearest_hit(position, position, grids.coarse, obstacle);
  if (!coarse) return out;
  const auto fine = detail::nearest_hit(position, *coarse, grids.refine, obstacle);
  out.nearest = fine ? *fine : *coarse;

  const std::vector<double> off = grids.boundary.offsets();
  const Eigen::Index n = static_cast<Eigen::Index>(off.size() * off.size() * off.size());
  out.Z.resize(n, 4);
  out.y.resize(n);
  Eigen::Index r = 0;
  for (double dx : off) {
    for (double dy : off) {
      for (double dz : off) {
        const Point3 q = *out.nearest + Point3(dx, dy, dz);
        out.Z.row(r) << q.x(), q.y(), q.z(), 1.0;
        out.y(r) = obstacle_oracle(q, obstacle);
        ++r;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Normal quantile

/// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

/// Φ⁻¹(p) for p in (0, 1): Acklam's rational approximation followed by one
/// Newton step on the CDF.
inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile needs p in (0,1)");
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  if (pdf > 0.0) x -= (normal_cdf(x) - p) / pdf;
  return x;
}

// ---------------------------------------------------------------------------
// Belief

struct GpBelief {
  Eigen::Vector4d mu = Eigen::Vector4d::Zero();
  Eigen::Matrix4d Sigma = Eigen::Matrix4d::Identity();
  double ridge = 1.0;
  /// Σ^{1/2} = [H, h].
  Eigen::Matrix<double, 4, 3> H = Eigen::Matrix<double, 4, 3>::Zero();
  Eigen::Vector4d h = Eigen::Vector4d::Zero();
  /// Set when the precision matrix needed an eigenvalue floor.
  bool regularized = false;

  Eigen::Matrix4d sqrt_sigma() const {
    Eigen::Matrix4d s;
    s << H, h;
    return s;
  }
};

/// Σ = (ZᵀZ/ridge + diag(1,1,1,0))⁻¹ and μ = ΣZᵀy.
inline GpBelief gp_posterior(const Matrix& Z, const Vector& y, double ridge = 1.0) {
  if (Z.rows() < 1 || Z.cols() != 4) throw std::invalid_argument("gp_posterior needs an N×4 design with N ≥ 1");
  if (y.size() != Z.rows()) throw std::invalid_argument("gp_posterior: label count does not match design rows");
  if (!(ridge > 0.0)) throw std::invalid_argument("ridge must be positive");
  GpBelief g;
  g.ridge = ridge;
  Eigen::Matrix4d M = (Z.transpose() * Z) / ridge;
  M.diagonal().head<3>().array() += 1.0;

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(M);
  Eigen::Vector4d ev = es.eigenvalues();
  const double floor = 1e-12 * std::max(ev.maxCoeff(), 1.0);
  for (int i = 0; i < 4; ++i) {
    if (ev(i) < floor) {
      ev(i) = floor;
      g.regularized = true;
    }
  }
  const Eigen::Matrix4d& Q = es.eigenvectors();
  g.Sigma = Q * ev.cwiseInverse().asDiagonal() * Q.transpose();
  g.mu = g.Sigma * (Z.transpose() * y);
  const Eigen::Matrix4d root = Q * ev.cwiseInverse().cwiseSqrt().asDiagonal() * Q.transpose();
  g.H = root.leftCols<3>();
  g.h = root.col(3);
  return g;
}

inline void check_failure_probability(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw std::domain_error("failure probability must lie in (0, 0.5)");
}

/// μᵀξ̄ − Φ⁻¹(ε)‖Σ^{1/2}ξ̄‖; the point is safe iff this is ≤ 0.
inline double chance_constraint_margin(const GpBelief& belief, const Point3& xi, double eps) {
  check_failure_probability(eps);
  const Eigen::Vector4d xb(xi.x(), xi.y(), xi.z(), 1.0);
  return belief.mu.dot(xb) - normal_quantile(eps) * (belief.H * xi + belief.h).norm();
}

/// The same constraint as ‖Hξ + h‖ ≤ μ̄ᵀξ + μ̄₄ with μ̄ = μ/Φ⁻¹(ε).
struct ChanceCone {
  Eigen::Matrix<double, 4, 3> H;
  Eigen::Vector4d h;
  Eigen::Vector3d mu_bar;
  double mu_bar4 = 0.0;

  /// ‖Hξ + h‖ − μ̄ᵀξ − μ̄₄, equal to the margin divided by |Φ⁻¹(ε)|.
  double residual(const Point3& xi) const { return (H * xi + h).norm() - mu_bar.dot(xi) - mu_bar4; }
};

inline ChanceCone chance_cone(const GpBelief& belief, double eps) {
  check_failure_probability(eps);
  const double q = normal_quantile(eps);
  return ChanceCone{belief.H, belief.h, belief.mu.head<3>() / q, belief.mu(3) / q};
}

}  // namespace wolfsocp
