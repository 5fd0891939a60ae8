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
 * @file wolfe.hpp
 * @brief Wolfe's active-set algorithm on the dual SOCP.
 *
 * The dual feasible set is a product of truncated Lorentz cones. Linear
 * minimization over it has a closed form per block, so the outer loop only
 * needs the gradient and one LMO call. The inner loop keeps the iterate the
 * minimizer of g over the convex hull of a small set of atoms.
 *
 * The products U·a and pᵀa of every retained atom are cached, which makes the
 * gradient cost O(n(m+1)L + n|A|) and the affine step O(|A|³ + n|A|²).
 */
#pragma once

#include "wolfsocp/projection.hpp"
#include "wolfsocp/report.hpp"
#include "wolfsocp/socp.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace wolfsocp {

/// A dual-feasible point produced by the LMO (or the warm start). `support`
/// lists the blocks with a nonzero (v_i, λ_i); the dense vector is kept for
/// assembling the iterate.
struct Atom {
  Vector z;
  std::vector<int> support;

  bool is_zero() const { return support.empty(); }
};

inline Atom make_atom(Vector z, int m) {
  Atom a;
  const int L = static_cast<int>(z.size()) / (m + 1);
  for (int i = 0; i < L; ++i) {
    if (z.segment(i * (m + 1), m + 1).cwiseAbs().maxCoeff() > 0.0) a.support.push_back(i);
  }
  a.z = std::move(z);
  return a;
}

/// Linear minimization over {‖v_i‖ ≤ λ_i ≤ λ_max}. Block i with gradient
/// pieces (w_i, γ_i) is zero when ‖w_i‖ − γ_i ≤ 0, otherwise
/// (−λ_max·w_i/‖w_i‖, λ_max).
inline Atom lmo(const Vector& gradient, int m, double lambda_max) {
  const int L = static_cast<int>(gradient.size()) / (m + 1);
  Atom a;
  a.z = Vector::Zero(gradient.size());
  for (int i = 0; i < L; ++i) {
    const int s = i * (m + 1);
    const auto w = gradient.segment(s, m);
    const double nw = w.norm();
    if (nw - gradient(s + m) <= 0.0) continue;
    a.z.segment(s, m) = (-lambda_max / nw) * w;
    a.z(s + m) = lambda_max;
    a.support.push_back(i);
  }
  return a;
}

/// Atoms with their convex coefficients and cached products.
class ActiveSet {
 public:
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<double>& alpha() const { return alpha_; }
  const std::vector<Vector>& cached_Ua() const { return Ua_; }
  const std::vector<double>& cached_pa() const { return pa_; }

  void add(Atom atom, double alpha, const DualSocp& dual) {
    Vector ua = Vector::Zero(dual.n());
    const int w = dual.m + 1;
    for (int i : atom.support) ua.noalias() += dual.U.middleCols(i * w, w) * atom.z.segment(i * w, w);
    pa_.push_back(dual.p.dot(atom.z));
    Ua_.push_back(std::move(ua));
    atoms_.push_back(std::move(atom));
    alpha_.push_back(alpha);
  }

  void set_alpha(std::vector<double> alpha) { alpha_ = std::move(alpha); }

  /// Removes every atom whose coefficient is not strictly positive.
  void drop_nonpositive() {
    std::size_t k = 0;
    for (std::size_t j = 0; j < atoms_.size(); ++j) {
      if (alpha_[j] > 0.0) {
        if (k != j) {
          atoms_[k] = std::move(atoms_[j]);
          Ua_[k] = std::move(Ua_[j]);
          pa_[k] = pa_[j];
          alpha_[k] = alpha_[j];
        }
        ++k;
      }
    }
    atoms_.resize(k);
    Ua_.resize(k);
    pa_.resize(k);
    alpha_.resize(k);
  }

  void pop_back() {
    atoms_.pop_back();
    Ua_.pop_back();
    pa_.pop_back();
    alpha_.pop_back();
  }

  bool contains(const Atom& a) const {
    for (const auto& b : atoms_) {
      if (b.support == a.support && b.z == a.z) return true;
    }
    return false;
  }

  Vector combined_Uz(Eigen::Index n) const {
    Vector uz = Vector::Zero(n);
    for (std::size_t j = 0; j < atoms_.size(); ++j) uz.noalias() += alpha_[j] * Ua_[j];
    return uz;
  }

  double combined_pz() const {
    double s = 0.0;
    for (std::size_t j = 0; j < atoms_.size(); ++j) s += alpha_[j] * pa_[j];
    return s;
  }

  Vector combined_z(Eigen::Index dim) const {
    Vector z = Vector::Zero(dim);
    for (std::size_t j = 0; j < atoms_.size(); ++j) {
      if (!atoms_[j].is_zero()) z.noalias() += alpha_[j] * atoms_[j].z;
    }
    return z;
  }

  /// Largest deviation between the cached products and a fresh evaluation.
  double cache_error(const DualSocp& dual) const {
    double err = 0.0;
    for (std::size_t j = 0; j < atoms_.size(); ++j) {
      const Vector fresh = dual.U * atoms_[j].z;
      const double scale = 1.0 + fresh.norm();
      err = std::max(err, (fresh - Ua_[j]).norm() / scale);
      err = std::max(err, std::abs(dual.p.dot(atoms_[j].z) - pa_[j]) / (1.0 + std::abs(pa_[j])));
    }
    return err;
  }

 private:
  std::vector<Atom> atoms_;
  std::vector<double> alpha_;
  std::vector<Vector> Ua_;
  std::vector<double> pa_;
};

/// Result of minimizing g over the affine hull of the active set.
///
/// `bounded == true`: `beta` are coefficients summing to one.
/// `bounded == false`: the Gram matrix is singular and g decreases without
/// bound along the affine hull; `beta` is then a direction with zero sum.
struct AffineStep {
  std::vector<double> beta;
  bool bounded = true;
  bool fallback = false;
};

namespace detail {

inline std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

// LDLT::rcond() pseudo-inverts zero pivots and reports exactly singular
// matrices as well conditioned, so the pivots are checked as well.
inline bool well_conditioned(const Eigen::LDLT<Matrix>& ldlt, double rcond_floor) {
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) return false;
  const Vector& D = ldlt.vectorD();
  if (!(D.minCoeff() > rcond_floor * D.maxCoeff())) return false;
  return ldlt.rcond() >= rcond_floor;
}

// Null-space aware solve used when the closed forms hit a singular Gram
// matrix. Parametrizes β = α + N y with N an orthonormal basis of 1⊥ and
// takes the minimum-norm minimizer in y, or a descent ray when the
// quadratic is flat but the linear term is not.
inline AffineStep affine_minimize_spectral(const Matrix& Q, const Vector& r, const Vector& alpha) {
  const Eigen::Index k = Q.rows();
  AffineStep out;
  out.fallback = true;
  if (k == 1) {
    out.beta = {1.0};
    return out;
  }
  Eigen::HouseholderQR<Matrix> qr(Matrix::Ones(k, 1));
  const Matrix full_q = qr.householderQ() * Matrix::Identity(k, k);
  const Matrix N = full_q.rightCols(k - 1);
  const Matrix M = N.transpose() * Q * N;
  const Vector g = N.transpose() * (2.0 * Q * alpha + r);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (M + M.transpose()));
  const Vector& mu = es.eigenvalues();
  const Matrix& V = es.eigenvectors();
  const double top = std::max(mu.maxCoeff(), 0.0);
  const double flat = 1e-12 * std::max(top, std::numeric_limits<double>::min());
  const double gscale = 1e-12 * (r.cwiseAbs().maxCoeff() + (Q * alpha).cwiseAbs().maxCoeff() + 1e-300);
  Vector y = Vector::Zero(k - 1);
  Vector ray = Vector::Zero(k - 1);
  bool unbounded = false;
  for (Eigen::Index j = 0; j < k - 1; ++j) {
    const double gj = V.col(j).dot(g);
    if (mu(j) > flat) {
      y.noalias() -= (gj / (2.0 * mu(j))) * V.col(j);
    } else if (std::abs(gj) > gscale) {
      ray.noalias() -= gj * V.col(j);
      unbounded = true;
    }
  }
  if (unbounded) {
    // The ray is flat only up to the tolerance; stop at the exact line
    // minimum when it comes before the boundary.
    const Vector d = N * ray;
    const double slope = (2.0 * Q * alpha + r).dot(d);
    const double curv = d.dot(Q * d);
    double t_boundary = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < k; ++j) {
      if (d(j) < 0.0) t_boundary = std::min(t_boundary, alpha(j) / -d(j));
    }
    if (slope < 0.0 && curv > 0.0 && -slope / (2.0 * curv) < t_boundary) {
      out.beta = to_std(alpha - (slope / (2.0 * curv)) * d);
      return out;
    }
    out.bounded = false;
    out.beta = to_std(d);
  } else {
    out.beta = to_std(alpha + N * y);
  }
  return out;
}

}  // namespace detail

/// Minimizes ‖UAβ‖² + βᵀAᵀp subject to 1ᵀβ = 1 over the active set.
///
/// Without a zero atom: β = −½(Q⁻¹Aᵀp + ν*Q⁻¹1), ν* = −(1ᵀQ⁻¹Aᵀp + 2)/(1ᵀQ⁻¹1),
/// Q = AᵀUᵀUA. With a zero atom the remaining coefficients are unconstrained:
/// β̂ = −½(ÂᵀUᵀUÂ)⁻¹Âᵀp and the zero atom takes 1 − 1ᵀβ̂.
inline AffineStep affine_minimize(const ActiveSet& active, double rcond_floor = 1e-12) {
  const std::size_t k = active.size();
  AffineStep out;
  if (k == 1) {
    out.beta = {1.0};
    return out;
  }
  const auto& atoms = active.atoms();
  const auto& Ua = active.cached_Ua();
  const auto& pa = active.cached_pa();

  std::size_t zero_idx = k;
  for (std::size_t j = 0; j < k; ++j) {
    if (atoms[j].is_zero()) {
      zero_idx = j;
      break;
    }
  }

  // Gram matrix of the full set; the spectral fallback works on it directly.
  Matrix Qfull(k, k);
  Vector rfull(k);
  for (std::size_t a = 0; a < k; ++a) {
    rfull(a) = pa[a];
    for (std::size_t b = a; b < k; ++b) {
      Qfull(a, b) = Qfull(b, a) = Ua[a].dot(Ua[b]);
    }
  }

  if (zero_idx == k) {
    Eigen::LDLT<Matrix> ldlt(Qfull);
    if (detail::well_conditioned(ldlt, rcond_floor)) {
      const Vector qr = ldlt.solve(rfull);
      const Vector q1 = ldlt.solve(Vector::Ones(k));
      const double nu = -(q1.sum() == 0.0 ? 0.0 : (qr.sum() + 2.0) / q1.sum());
      out.beta = detail::to_std(-0.5 * (qr + nu * q1));
      return out;
    }
  } else {
    // Case with the zero atom: unconstrained over the nonzero atoms.
    std::vector<Eigen::Index> idx;
    for (std::size_t j = 0; j < k; ++j)
      if (j != zero_idx) idx.push_back(static_cast<Eigen::Index>(j));
    const Eigen::Index h = static_cast<Eigen::Index>(idx.size());
    Matrix Qh(h, h);
    Vector rh(h);
    for (Eigen::Index a = 0; a < h; ++a) {
      rh(a) = rfull(idx[a]);
      for (Eigen::Index b = 0; b < h; ++b) Qh(a, b) = Qfull(idx[a], idx[b]);
    }
    Eigen::LDLT<Matrix> ldlt(Qh);
    if (detail::well_conditioned(ldlt, rcond_floor)) {
      const Vector bh = -0.5 * ldlt.solve(rh);
      out.beta.assign(k, 0.0);
      for (Eigen::Index a = 0; a < h; ++a) out.beta[static_cast<std::size_t>(idx[a])] = bh(a);
      out.beta[zero_idx] = 1.0 - bh.sum();
      return out;
    }
  }
  Vector alpha(k);
  for (std::size_t j = 0; j < k; ++j) alpha(static_cast<Eigen::Index>(j)) = active.alpha()[j];
  return detail::affine_minimize_spectral(Qfull, rfull, alpha);
}

struct BoundaryStep {
  double gamma = 0.0;
  std::vector<double> alpha;
};

/// Largest γ ∈ [0, 1] with γβ + (1−γ)α ⪰ 0. The entry that limits γ is set
/// to exactly zero.
///
/// Precondition: β has at least one negative entry.
inline BoundaryStep line_search_to_boundary(const std::vector<double>& alpha,
                                            const std::vector<double>& beta) {
  BoundaryStep out;
  out.gamma = std::numeric_limits<double>::infinity();
  std::size_t arg = alpha.size();
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (beta[j] < 0.0) {
      const double g = alpha[j] / (alpha[j] - beta[j]);
      if (g < out.gamma) {
        out.gamma = g;
        arg = j;
      }
    }
  }
  if (arg == alpha.size()) out.gamma = 1.0;
  out.alpha.resize(alpha.size());
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    const double a = out.gamma * beta[j] + (1.0 - out.gamma) * alpha[j];
    out.alpha[j] = a > 0.0 ? a : 0.0;
  }
  if (arg < alpha.size()) out.alpha[arg] = 0.0;
  return out;
}

/// Moves α along a zero-sum direction until the first coefficient hits zero.
inline BoundaryStep line_search_along_ray(const std::vector<double>& alpha,
                                          const std::vector<double>& direction) {
  BoundaryStep out;
  out.gamma = std::numeric_limits<double>::infinity();
  std::size_t arg = alpha.size();
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (direction[j] < 0.0) {
      const double t = alpha[j] / -direction[j];
      if (t < out.gamma) {
        out.gamma = t;
        arg = j;
      }
    }
  }
  out.alpha = alpha;
  if (arg == alpha.size()) return out;
  double sum = 0.0;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    const double a = alpha[j] + out.gamma * direction[j];
    out.alpha[j] = a > 0.0 ? a : 0.0;
  }
  out.alpha[arg] = 0.0;
  for (double a : out.alpha) sum += a;
  for (double& a : out.alpha) a /= sum;
  return out;
}

struct WolfeOptions {
  int max_outer = 1000;
  double delta0 = 1e-6;
  int max_inner = 100;
  /// Tripwire on |A|; 0 means 10·L.
  int atom_cap = 0;
  double rcond_floor = 1e-12;
  /// Re-checks monotonicity, feasibility and cache coherence every step and
  /// counts violations in the report. Costs a dense U·a per atom.
  bool check_invariants = false;
};

/// Wolfe's algorithm on the dual. `z0` empty means a cold start at zero.
///
/// Sub-optimality is checked at the top of every outer iteration, so an
/// optimal warm start returns after one iteration without calling the LMO.
inline SolveReport wolfe_solve(const DualSocp& dual, const WolfeOptions& opts, const Vector& z0 = Vector()) {
  Stopwatch clock;
  SolveReport rep;
  const int dim = dual.dim();
  const int cap = opts.atom_cap > 0 ? opts.atom_cap : 10 * std::max(dual.L, 1);

  Vector start = z0.size() == dim ? z0 : Vector::Zero(dim);
  if (!DualPoint(start, dual.m).feasible(dual.lambda_max)) start = project_dual(start, dual.m, dual.lambda_max);

  ActiveSet active;
  active.add(make_atom(start, dual.m), 1.0, dual);

  auto objective = [&](const ActiveSet& s) {
    return s.combined_Uz(dual.n()).squaredNorm() + s.combined_pz();
  };

  for (int t = 0; t < opts.max_outer; ++t) {
    rep.outer_iters = t + 1;
    const Vector Uz = active.combined_Uz(dual.n());
    const Vector z = active.combined_z(dim);
    const double pz = active.combined_pz();
    const Suboptimality sub = suboptimality_from_dual(dual, z, Uz, pz);
    rep.final_delta = sub.delta;
    if (opts.check_invariants) {
      if (!DualPoint(z, dual.m).feasible(dual.lambda_max, 1e-9 * (1.0 + dual.lambda_max))) ++rep.invariant_violations;
      if (active.cache_error(dual) > 1e-12) ++rep.invariant_violations;
    }
    if (sub.delta < opts.delta0) {
      rep.fail = false;
      rep.z_star = DualPoint(z, dual.m);
      rep.wall_time = clock.seconds();
      return rep;
    }

    const Vector grad = 2.0 * (dual.U.transpose() * Uz) + dual.p;
    Atom s = lmo(grad, dual.m, dual.lambda_max);
    if (!active.contains(s)) active.add(std::move(s), 0.0, dual);
    rep.max_active = std::max(rep.max_active, static_cast<int>(active.size()));
    if (static_cast<int>(active.size()) > cap) rep.atom_cap_hit = true;

    double g_prev = opts.check_invariants ? objective(active) : 0.0;
    bool settled = false;
    for (int inner = 0; inner < opts.max_inner; ++inner) {
      ++rep.inner_iters;
      AffineStep step = affine_minimize(active, opts.rcond_floor);
      if (step.fallback) ++rep.gram_fallbacks;
      if (!step.bounded) {
        active.set_alpha(line_search_along_ray(active.alpha(), step.beta).alpha);
        active.drop_nonpositive();
      } else if (std::all_of(step.beta.begin(), step.beta.end(), [](double b) { return b >= 0.0; })) {
        active.set_alpha(std::move(step.beta));
        active.drop_nonpositive();
        settled = true;
      } else {
        active.set_alpha(line_search_to_boundary(active.alpha(), step.beta).alpha);
        active.drop_nonpositive();
      }
      if (opts.check_invariants) {
        const double g_now = objective(active);
        if (g_now > g_prev + 1e-9 * (1.0 + std::abs(g_prev))) ++rep.invariant_violations;
        g_prev = g_now;
      }
      if (settled) break;
    }
    if (!settled) rep.inner_cap_hit = true;
  }

  rep.z_star = DualPoint(active.combined_z(dim), dual.m);
  rep.final_delta = suboptimality(dual, rep.z_star).delta;
  rep.fail = !(rep.final_delta < opts.delta0);
  rep.wall_time = clock.seconds();
  return rep;
}

}  // namespace wolfsocp
