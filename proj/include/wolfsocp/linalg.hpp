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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace wolfsocp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Symmetric PSD square root and inverse square root from one eigendecomposition.
///
/// Eigenvalues below `clamp_rel * max_eig` are clamped to zero before rooting.
/// `min_ratio` reports the smallest/largest eigenvalue ratio after clamping so
/// callers can decide whether the inverse is usable.
struct SymmetricRoot {
  Matrix root;
  Matrix inv_root;
  double min_ratio = 0.0;
};

inline SymmetricRoot symmetric_root(const Matrix& m, double clamp_rel = 1e-12) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()));
  Vector ev = es.eigenvalues();
  const double top = std::max(ev.maxCoeff(), 0.0);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < clamp_rel * top) ev(i) = 0.0;
  }
  SymmetricRoot out;
  out.min_ratio = top > 0.0 ? ev.minCoeff() / top : 0.0;
  const Matrix& q = es.eigenvectors();
  Vector sq = ev.cwiseSqrt();
  Vector isq = sq.unaryExpr([](double s) { return s > 0.0 ? 1.0 / s : 0.0; });
  out.root = q * sq.asDiagonal() * q.transpose();
  out.inv_root = q * isq.asDiagonal() * q.transpose();
  return out;
}

/// Largest singular value of `a` squared, by power iteration on aᵀa.
inline double spectral_norm_sq_estimate(const Matrix& a, int iters = 50) {
  if (a.size() == 0) return 0.0;
  Vector x = Vector::Ones(a.cols()) / std::sqrt(static_cast<double>(a.cols()));
  double est = 0.0;
  for (int k = 0; k < iters; ++k) {
    Vector y = a.transpose() * (a * x);
    const double nrm = y.norm();
    if (nrm == 0.0) return 0.0;
    est = x.dot(y);
    x = y / nrm;
  }
  // One extra Rayleigh quotient on the converged direction.
  return std::max(est, (a * x).squaredNorm());
}

}  // namespace wolfsocp
