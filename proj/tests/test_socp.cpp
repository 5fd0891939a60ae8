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

#include "wolfsocp/bench.hpp"
#include "wolfsocp/socp.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace wolfsocp {
namespace {

Vector Vector3(double a, double b, double c) { return Eigen::Vector3d(a, b, c); }
Vector Vector2(double a, double b) { return Eigen::Vector2d(a, b); }

using testing::identity_problem;
using testing::random_problem;

TEST(TransformToDual, IdentityBlockByHand) {
  const DualSocp d = transform_to_dual(identity_problem(), 100.0);
  Matrix U_expected(2, 3);
  U_expected << 0.5, 0.0, 0.0, 0.0, 0.5, 0.0;
  EXPECT_TRUE(d.U == U_expected);
  EXPECT_TRUE(d.p == Vector3(1.0, 1.0, 10.0));
  EXPECT_EQ(d.m, 2);
  EXPECT_EQ(d.L, 1);
  EXPECT_EQ(d.lambda_max, 100.0);
}

TEST(TransformToDual, ZeroOffsetsGiveZeroLinearTerm) {
  GaussianRng rng(1);
  PrimalSocp p = random_problem(rng, 4, 3, 3);
  p.p_hat.setZero();
  for (auto& b : p.blocks) {
    b.b.setZero();
    b.d = 0.0;
  }
  EXPECT_TRUE(transform_to_dual(p).p.isZero(0.0));
}

TEST(TransformToDual, MatchesElementwiseAssembly) {
  GaussianRng rng(2);
  const int n = 5, m = 3, L = 2;
  const PrimalSocp p = random_problem(rng, n, m, L);
  const DualSocp d = transform_to_dual(p);
  ASSERT_EQ(d.U.rows(), n);
  ASSERT_EQ(d.U.cols(), (m + 1) * L);
  for (int i = 0; i < L; ++i) {
    const auto& blk = p.blocks[static_cast<std::size_t>(i)];
    for (int r = 0; r < n; ++r) {
      for (int k = 0; k < m; ++k) EXPECT_EQ(d.U(r, i * (m + 1) + k), 0.5 * blk.B(k, r));
      EXPECT_EQ(d.U(r, i * (m + 1) + m), -0.5 * blk.c(r));
    }
    for (int k = 0; k < m; ++k) {
      double utp = 0.0;
      for (int r = 0; r < n; ++r) utp += d.U(r, i * (m + 1) + k) * p.p_hat(r);
      EXPECT_NEAR(d.p(i * (m + 1) + k), utp - blk.b(k), 1e-14);
    }
    double utp = 0.0;
    for (int r = 0; r < n; ++r) utp += d.U(r, i * (m + 1) + m) * p.p_hat(r);
    EXPECT_NEAR(d.p(i * (m + 1) + m), utp + blk.d, 1e-14);
  }
}

TEST(TransformToDual, DimensionErrorNamesBlock) {
  GaussianRng rng(3);
  PrimalSocp p = random_problem(rng, 4, 2, 3);
  p.blocks[2].c = Vector::Zero(3);
  try {
    transform_to_dual(p);
    FAIL() << "expected DimensionError";
  } catch (const DimensionError& e) {
    EXPECT_EQ(e.block(), 2);
  }
  p = random_problem(rng, 4, 2, 3);
  p.blocks[1].B = Matrix::Zero(3, 4);
  try {
    transform_to_dual(p);
    FAIL() << "expected DimensionError";
  } catch (const DimensionError& e) {
    EXPECT_EQ(e.block(), 1);
  }
  EXPECT_THROW(transform_to_dual(PrimalSocp{Vector::Ones(2), {}}), DimensionError);
  EXPECT_THROW(transform_to_dual(identity_problem(), 0.0), std::invalid_argument);
}

TEST(RecoverPrimal, Examples) {
  const PrimalSocp p = identity_problem();
  const DualSocp d = transform_to_dual(p);
  EXPECT_TRUE(recover_primal(d, DualPoint::zero(2, 1), p.p_hat) == Vector::Constant(2, -1.0));

  // z = (0, 0, 1) selects the λ column, which is −c/2 = 0.
  const Vector u = recover_primal(d, DualPoint(Vector3(0, 0, 1), 2), p.p_hat);
  EXPECT_TRUE(u == Vector::Constant(2, -1.0));
  // z = (2, 0, 0): Uz = (1, 0).
  EXPECT_TRUE(recover_primal(d, DualPoint(Vector3(2, 0, 0), 2), p.p_hat) == Vector2(-2.0, -1.0));

  GaussianRng rng(4);
  const PrimalSocp q = random_problem(rng, 3, 2, 2);
  const DualSocp dq = transform_to_dual(q);
  const Vector z = testing::random_feasible_dual(rng, 2, 2, 5.0);
  const Vector w = dq.U * z;
  EXPECT_TRUE(recover_primal(dq, DualPoint(z, 2), Vector::Zero(3)).isApprox(-w, 1e-15));
  EXPECT_THROW(recover_primal(dq, DualPoint(Vector::Zero(5), 2), q.p_hat), DimensionError);
}

TEST(Suboptimality, ZeroPointOnIdentityProblem) {
  const PrimalSocp p = identity_problem();
  const DualSocp d = transform_to_dual(p);
  const Suboptimality s = suboptimality(p, d, DualPoint::zero(2, 1));
  EXPECT_EQ(s.f_p, 0.0);
  EXPECT_EQ(s.d_gap, 0.0);
  EXPECT_NEAR(s.I_p(0), std::sqrt(2.0) - 10.0, 1e-15);
  EXPECT_EQ(s.I_d(0), 0.0);
  EXPECT_LE(s.delta, 0.0);
}

TEST(Suboptimality, InfeasibleDualBlock) {
  const PrimalSocp p = identity_problem();
  const DualSocp d = transform_to_dual(p);
  const DualPoint z(Vector3(2.0, 0.0, 1.0), 2);
  const Suboptimality s = suboptimality(p, d, z);
  EXPECT_DOUBLE_EQ(s.I_d(0), 1.0);
  EXPECT_GE(s.delta, 0.5);
}

TEST(Suboptimality, FeasibleCombinationHasNoDualInfeasibility) {
  GaussianRng rng(5);
  const PrimalSocp p = random_problem(rng, 4, 3, 4);
  const DualSocp d = transform_to_dual(p);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector a = testing::random_feasible_dual(rng, 3, 4, 10.0);
    const Vector b = testing::random_feasible_dual(rng, 3, 4, 10.0);
    const double t = rng.uniform();
    const Suboptimality s = suboptimality(p, d, DualPoint(t * a + (1 - t) * b, 3));
    EXPECT_LE(s.I_d.maxCoeff(), 1e-12);
  }
}

TEST(Suboptimality, DualPathMatchesPrimalPath) {
  GaussianRng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const PrimalSocp p = random_problem(rng, 6, 3, 5);
    const DualSocp d = transform_to_dual(p);
    const DualPoint z(testing::random_feasible_dual(rng, 3, 5, 3.0), 3);
    const Suboptimality a = suboptimality(p, d, z);
    const Suboptimality b = suboptimality(d, z);
    EXPECT_NEAR(a.f_p, b.f_p, 1e-10 * (1 + a.f_p));
    EXPECT_NEAR(a.d_gap, b.d_gap, 1e-10 * (1 + std::abs(a.d_gap)));
    EXPECT_TRUE(a.I_p.isApprox(b.I_p, 1e-10));
    EXPECT_TRUE(a.I_d.isApprox(b.I_d, 1e-12));
    EXPECT_NEAR(a.delta, b.delta, 1e-10 * (1 + std::abs(a.delta)));
  }
}

// Property: primal objective at the recovered point equals ‖Uz‖².
TEST(DualityProperties, RoundTripObjective) {
  GaussianRng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const PrimalSocp p = random_problem(rng, 5, 2, 3);
    const DualSocp d = transform_to_dual(p);
    const DualPoint z(testing::random_feasible_dual(rng, 2, 3, 4.0), 2);
    const double lhs = p.objective(recover_primal(d, z, p.p_hat));
    const double rhs = (d.U * z.z()).squaredNorm();
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, rhs));
  }
}

// Property: any primal-feasible point bounds every dual-feasible value.
TEST(DualityProperties, WeakDuality) {
  GaussianRng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const PrimalSocp p = gen_synthetic({6, 3, static_cast<std::uint64_t>(trial)});
    const DualSocp d = transform_to_dual(p, 50.0);
    // û = 0 is strictly feasible for the synthetic family, and so is a
    // small perturbation of it.
    Vector u = Vector::Zero(6);
    for (int k = 0; k < 6; ++k) u(k) = 0.05 * rng.normal();
    bool feasible = true;
    for (int i = 0; i < p.num_cones(); ++i) feasible = feasible && p.cone_residual(i, u) <= 0.0;
    ASSERT_TRUE(feasible);
    for (int k = 0; k < 10; ++k) {
      const Vector z = testing::random_feasible_dual(rng, 6, 3, 50.0);
      EXPECT_GE(p.objective(u), -d.objective(z) - 1e-9);
      EXPECT_GE(p.objective(Vector::Zero(6)), -d.objective(z) - 1e-9);
    }
  }
}

TEST(DualPoint, FeasibilityPredicate) {
  DualPoint z(Vector3(3.0, 4.0, 5.0), 2);
  EXPECT_TRUE(z.feasible(5.0));
  EXPECT_FALSE(z.feasible(4.9));
  z.z()(2) = 4.9;
  EXPECT_FALSE(z.feasible(10.0));
  EXPECT_TRUE(z.feasible(10.0, 0.2));
}

}  // namespace
}  // namespace wolfsocp
