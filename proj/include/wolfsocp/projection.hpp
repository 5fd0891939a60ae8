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

#include "wolfsocp/linalg.hpp"

#include <cmath>

namespace wolfsocp {

struct ConeProjection {
  Vector v;
  double lambda = 0.0;
};

/// Euclidean projection of (v, λ) onto {‖v‖ ≤ λ ≤ λ_max}.
///
/// If the projection onto the untruncated cone lands above the cap, the
/// nearest point of the truncated set lies on the face λ = λ_max, where the
/// set is the disk ‖v‖ ≤ λ_max; clipping v there is exact.
inline ConeProjection project_cone_block(const Vector& v, double lam, double lambda_max) {
  ConeProjection out;
  const double nv = v.norm();
  if (nv <= lam) {
    out.v = v;
    out.lambda = lam;
  } else if (nv <= -lam) {
    out.v = Vector::Zero(v.size());
    out.lambda = 0.0;
  } else {
    const double t = 0.5 * (lam + nv);
    out.v = (t / nv) * v;
    out.lambda = t;
  }
  if (out.lambda > lambda_max) {
    out.lambda = lambda_max;
    const double nvp = out.v.norm();
    if (nvp > lambda_max) out.v *= lambda_max / nvp;
  }
  return out;
}

/// Blockwise projection of a full dual vector laid out as [v₁; λ₁; …].
inline Vector project_dual(const Vector& z, int m, double lambda_max) {
  Vector out(z.size());
  const int L = static_cast<int>(z.size()) / (m + 1);
  for (int i = 0; i < L; ++i) {
    const int s = i * (m + 1);
    auto pr = project_cone_block(z.segment(s, m), z(s + m), lambda_max);
    out.segment(s, m) = pr.v;
    out(s + m) = pr.lambda;
  }
  return out;
}

}  // namespace wolfsocp
