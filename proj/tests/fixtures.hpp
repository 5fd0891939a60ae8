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

// Small problem builders shared by the unit tests.
#pragma once

#include "wolfsocp/bench.hpp"
#include "wolfsocp/rng.hpp"
#include "wolfsocp/socp.hpp"

namespace wolfsocp::testing {

// L = 1, m = n = 2, B = I, b = 0, c = 0, d = 10, p̂ = (2, 2).
inline PrimalSocp identity_problem() {
  PrimalSocp p;
  p.p_hat = Vector::Constant(2, 2.0);
  ConeBlock blk;
  blk.B = Matrix::Identity(2, 2);
  blk.b = Vector::Zero(2);
  blk.c = Vector::Zero(2);
  blk.d = 10.0;
  p.blocks.push_back(blk);
  return p;
}

// Gaussian data with d_i in [5, 6).
inline PrimalSocp random_problem(GaussianRng& rng, int n, int m, int L) {
  PrimalSocp p;
  p.p_hat.resize(n);
  for (int k = 0; k < n; ++k) p.p_hat(k) = rng.normal();
  for (int i = 0; i < L; ++i) {
    ConeBlock blk;
    blk.B.resize(m, n);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < n; ++c) blk.B(r, c) = rng.normal();
    blk.b.resize(m);
    for (int r = 0; r < m; ++r) blk.b(r) = rng.normal();
    blk.c.resize(n);
    for (int c = 0; c < n; ++c) blk.c(c) = rng.normal();
    blk.d = 5.0 + rng.uniform();
    p.blocks.push_back(blk);
  }
  return p;
}

// Synthetic instance with p̂ scaled up so the unconstrained minimizer
// violates some cones and z* is nonzero.
inline PrimalSocp active_problem(int n, int L, std::uint64_t seed, double scale = 10.0) {
  PrimalSocp p = gen_synthetic({n, L, seed});
  p.p_hat *= scale;
  return p;
}

inline bool unconstrained_feasible(const PrimalSocp& p) {
  const Vector u = -0.5 * p.p_hat;
  for (int i = 0; i < p.num_cones(); ++i)
    if (p.cone_residual(i, u) > 0.0) return false;
  return true;
}

}  // namespace wolfsocp::testing
