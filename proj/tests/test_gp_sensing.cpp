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

#include "wolfsocp/gp_sensing.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace wolfsocp {
namespace {

Matrix single_point_design() {
  Matrix Z(1, 4);
  Z << 0.0, 0.0, 0.0, 1.0;
  return Z;
}

TEST(Oracle, Ceilings) {
  EXPECT_EQ(obstacle_oracle(Point3(0.2, 0.3, 0.1), Ceiling{0.35}), -1);
  EXPECT_EQ(obstacle_oracle(Point3(0.2, 0.3, 0.09), Ceiling{0.08}), 1);
}

TEST(Oracle, Cylinder) {
  const Cylinder c{Point3(0.5, 0.5, 0.0), Point3::UnitZ(), 0.2};
  EXPECT_EQ(obstacle_oracle(Point3(0.5, 0.6, 0.3), c), 1);
  EXPECT_EQ(obstacle_oracle(Point3(0.5, 0.75, 0.3), c), -1);
  // Axis need not be normalized.
  const Cylinder c2{Point3(0.5, 0.5, 0.0), Point3(0, 0, 5), 0.2};
  EXPECT_EQ(obstacle_oracle(Point3(0.5, 0.6, -3.0), c2), 1);
}

TEST(Oracle, OtherShapes) {
  EXPECT_TRUE(inside(Point3(0, 0, 1), HalfSpace{Point3::UnitZ(), 0.5}));
  EXPECT_FALSE(inside(Point3(0, 0, 0), HalfSpace{Point3::UnitZ(), 0.5}));
  const HalfWall w{Point3(0.5, 0.5, 0), Point3(1, 1, 0).normalized(), Point3(-1, 1, 0).normalized(), 0.06};
  EXPECT_TRUE(inside(Point3(0.4, 0.6, 0.1), w));
  EXPECT_FALSE(inside(Point3(0.6, 0.4, 0.1), w));
  EXPECT_FALSE(inside(Point3(0.45, 0.65, 0.1), w));
  const Hill h{Eigen::Vector2d(0.5, 0.5), 0.2, 0.15, -0.05};
  EXPECT_TRUE(inside(Point3(0.5, 0.5, 0.14), h));
  EXPECT_FALSE(inside(Point3(0.5, 0.5, 0.16), h));
  EXPECT_FALSE(inside(Point3(0.0, 0.0, -0.04), h));
  EXPECT_TRUE(inside(Point3(0.1, 0.1, 5.0), Circle2D{Eigen::Vector2d(0.1, 0.1), 0.05}));
  const Triangle2D t{Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)};
  EXPECT_TRUE(inside(Point3(0.2, 0.2, 0), t));
  EXPECT_FALSE(inside(Point3(0.6, 0.6, 0), t));
}

TEST(Sensing, NothingInRangeIsEmpty) {
  const SensingResult s = sense_two_level(Point3(0, 0, 0), Ceiling{0.35});
  EXPECT_TRUE(s.empty());
  EXPECT_FALSE(s.nearest.has_value());
  EXPECT_EQ(s.y.size(), 0);
}

TEST(Sensing, NearestCeilingPointMatchesBruteForce) {
  const Ceiling c{0.08};
  const Point3 pos(0.2, 0.3, 0.03);
  const SensingResult s = sense_two_level(pos, c);
  ASSERT_TRUE(s.nearest.has_value());
  EXPECT_NEAR(s.nearest->z(), 0.08, 0.02);
  const auto ref = testing::brute_force_nearest(pos, c, 0.3, 0.02);
  ASSERT_TRUE(ref.has_value());
  EXPECT_NEAR((*s.nearest - pos).norm(), (*ref - pos).norm(), 0.02);
  EXPECT_LE((s.nearest->head<2>() - pos.head<2>()).norm(), 0.02);
}

TEST(Sensing, NearestCylinderPointMatchesBruteForce) {
  const Cylinder c{Point3(0.5, 0.5, 0.0), Point3::UnitZ(), 0.1};
  for (const Point3 pos : {Point3(0.3, 0.35, 0.05), Point3(0.45, 0.3, 0.0), Point3(0.7, 0.7, 0.1)}) {
    const SensingResult s = sense_two_level(pos, c);
    const auto ref = testing::brute_force_nearest(pos, c, 0.36, 0.01);
    ASSERT_TRUE(s.nearest.has_value());
    ASSERT_TRUE(ref.has_value());
    EXPECT_NEAR((*s.nearest - pos).norm(), (*ref - pos).norm(), 0.02);
  }
}

TEST(Sensing, BoundaryGridLayout) {
  const SensingResult s = sense_two_level(Point3(0.2, 0.3, 0.03), Ceiling{0.08});
  ASSERT_EQ(s.Z.rows(), 9 * 9 * 9);
  EXPECT_TRUE(s.Z.col(3).isOnes(0.0));
  for (Eigen::Index r = 0; r < s.Z.rows(); ++r) {
    EXPECT_LE((s.Z.row(r).head<3>().transpose() - *s.nearest).cwiseAbs().maxCoeff(), 0.04 + 1e-12);
    EXPECT_EQ(s.y(r), obstacle_oracle(s.Z.row(r).head<3>().transpose(), Ceiling{0.08}));
  }
}

// A planar boundary gives linearly separable labels; check with z itself.
TEST(Sensing, PlanarLabelsAreSeparable) {
  const Ceiling c{0.08};
  const SensingResult s = sense_two_level(Point3(0.5, 0.5, 0.0), c);
  ASSERT_FALSE(s.empty());
  double max_out = -1e9, min_in = 1e9;
  for (Eigen::Index r = 0; r < s.Z.rows(); ++r) {
    if (s.y(r) > 0) min_in = std::min(min_in, s.Z(r, 2));
    else max_out = std::max(max_out, s.Z(r, 2));
  }
  EXPECT_LT(max_out, min_in);
}

TEST(Posterior, SinglePointAtUnitRidge) {
  const GpBelief g = gp_posterior(single_point_design(), Vector::Ones(1), 1.0);
  // (e₄e₄ᵀ + diag(1,1,1,0))⁻¹ = I.
  EXPECT_LE((g.Sigma - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((g.mu - Eigen::Vector4d(0, 0, 0, 1)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_FALSE(g.regularized);
}

TEST(Posterior, SinglePointAtHalfRidge) {
  const GpBelief g = gp_posterior(single_point_design(), Vector::Ones(1), 0.5);
  Eigen::Matrix4d expected = Eigen::Matrix4d::Identity();
  expected(3, 3) = 0.5;
  EXPECT_LE((g.Sigma - expected).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((g.mu - Eigen::Vector4d(0, 0, 0, 0.5)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((g.sqrt_sigma() * g.sqrt_sigma() - g.Sigma).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Posterior, MatchesDirectInverse) {
  GaussianRng rng(61);
  Matrix Z(40, 4);
  Vector y(40);
  for (int r = 0; r < 40; ++r) {
    Z.row(r) << rng.normal(), rng.normal(), rng.normal(), 1.0;
    y(r) = rng.uniform() < 0.5 ? -1.0 : 1.0;
  }
  const double ridge = 0.7;
  const GpBelief g = gp_posterior(Z, y, ridge);
  Eigen::Matrix4d S4 = Eigen::Matrix4d::Zero();
  S4.diagonal().head<3>().setOnes();
  const Eigen::Matrix4d Sigma = (Z.transpose() * Z / ridge + S4).inverse();
  EXPECT_LE((g.Sigma - Sigma).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((g.mu - Sigma * Z.transpose() * y).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((g.sqrt_sigma() * g.sqrt_sigma() - Sigma).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((g.sqrt_sigma() - g.sqrt_sigma().transpose()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Posterior, ZeroLabelsGiveZeroMean) {
  const SensingResult s = sense_two_level(Point3(0.2, 0.3, 0.03), Ceiling{0.08});
  const GpBelief g = gp_posterior(s.Z, Vector::Zero(s.Z.rows()));
  EXPECT_TRUE(g.mu.isZero(0.0));
}

// Labels symmetric about a plane through the origin: the mean normal lines
// up with the plane normal and points toward the +1 side. The reference is
// the direction of a least-squares fit of the labels.
TEST(Posterior, SymmetricLabelsAlignWithNormal) {
  const Point3 normal = Point3(1.0, 2.0, -0.5).normalized();
  GaussianRng rng(62);
  Matrix Z(400, 4);
  Vector y(400);
  for (int r = 0; r < 200; ++r) {
    Point3 p(rng.normal(), rng.normal(), rng.normal());
    p -= normal.dot(p) * normal;  // in-plane component
    const double off = 0.1 + rng.uniform();
    const Point3 a = p + off * normal, b = p - off * normal;
    Z.row(2 * r) << a.transpose(), 1.0;
    Z.row(2 * r + 1) << b.transpose(), 1.0;
    y(2 * r) = 1.0;
    y(2 * r + 1) = -1.0;
  }
  const GpBelief g = gp_posterior(Z, y);
  const Point3 mu3 = g.mu.head<3>();
  EXPECT_GT(mu3.dot(normal), 0.0);
  const Eigen::Vector4d ls = Z.colPivHouseholderQr().solve(y);
  EXPECT_GT(std::abs(ls.head<3>().normalized().dot(normal)), 0.99);
  // In-plane pairs cancel only statistically; compare angles loosely to the
  // least-squares direction and tightly to exact symmetry below.
  EXPECT_GT(mu3.normalized().dot(normal), 0.99);

  // Exactly mirrored in-plane components make the symmetry exact.
  Matrix Zs(8, 4);
  Vector ys(8);
  const Point3 t1 = normal.unitOrthogonal(), t2 = normal.cross(t1);
  int r = 0;
  for (const Point3& t : {t1, Point3(-t1), t2, Point3(-t2)}) {
    Zs.row(r) << (t + 0.3 * normal).transpose(), 1.0;
    ys(r++) = 1.0;
    Zs.row(r) << (t - 0.3 * normal).transpose(), 1.0;
    ys(r++) = -1.0;
  }
  const GpBelief gs = gp_posterior(Zs, ys);
  EXPECT_NEAR(gs.mu.head<3>().normalized().dot(normal), 1.0, 1e-6);
  EXPECT_NEAR(gs.mu(3), 0.0, 1e-12);
}

TEST(Posterior, RejectsBadInput) {
  EXPECT_THROW(gp_posterior(Matrix(0, 4), Vector(0)), std::invalid_argument);
  EXPECT_THROW(gp_posterior(Matrix::Ones(2, 3), Vector::Ones(2)), std::invalid_argument);
  EXPECT_THROW(gp_posterior(Matrix::Ones(2, 4), Vector::Ones(3)), std::invalid_argument);
  EXPECT_THROW(gp_posterior(Matrix::Ones(2, 4), Vector::Ones(2), 0.0), std::invalid_argument);
}

TEST(Quantile, HighPrecisionReferences) {
  // Reference values computed with 30-digit arithmetic.
  const std::pair<double, double> refs[] = {
      {0.5, 0.0},
      {0.1, -1.281551565544600467},
      {0.01, -2.3263478740408411009},
      {0.001, -3.0902323061678135415},
      {0.05, -1.6448536269514727149},
      {0.3, -0.52440051270804078404},
  };
  for (const auto& [p, x] : refs) {
    EXPECT_NEAR(normal_quantile(p), x, 1e-9) << "p = " << p;
    EXPECT_NEAR(normal_quantile(1.0 - p), -x, 1e-9) << "p = " << 1.0 - p;
  }
  EXPECT_THROW(normal_quantile(0.0), std::domain_error);
  EXPECT_THROW(normal_quantile(1.0), std::domain_error);
}

TEST(Margin, SinglePointBeliefExcludesOrigin) {
  const GpBelief g = gp_posterior(single_point_design(), Vector::Ones(1), 0.5);
  const double m = chance_constraint_margin(g, Point3::Zero(), 0.01);
  EXPECT_NEAR(m, 0.5 + 2.3263478740408411 * std::sqrt(0.5), 1e-9);
  EXPECT_GT(m, 0.0);
  const GpBelief g1 = gp_posterior(single_point_design(), Vector::Ones(1), 1.0);
  EXPECT_NEAR(chance_constraint_margin(g1, Point3::Zero(), 0.01), 1.0 + 2.3263478740408411, 1e-9);
}

TEST(Margin, HalfProbabilityLimitIsMeanTest) {
  GaussianRng rng(63);
  const SensingResult s = sense_two_level(Point3(0.2, 0.3, 0.03), Ceiling{0.08});
  const GpBelief g = gp_posterior(s.Z, s.y);
  const Point3 xi(0.2, 0.3, 0.0);
  const double mean_test = g.mu.dot(Eigen::Vector4d(xi.x(), xi.y(), xi.z(), 1.0));
  EXPECT_NEAR(chance_constraint_margin(g, xi, 0.5 - 1e-12), mean_test, 1e-9);
  EXPECT_THROW(chance_constraint_margin(g, xi, 0.5), std::domain_error);
  EXPECT_THROW(chance_constraint_margin(g, xi, 0.0), std::domain_error);
  EXPECT_THROW(chance_cone(g, 0.7), std::domain_error);
}

TEST(Margin, NonIncreasingInFailureProbability) {
  GaussianRng rng(64);
  const SensingResult s = sense_two_level(Point3(0.5, 0.5, 0.0), Ceiling{0.08});
  const GpBelief g = gp_posterior(s.Z, s.y);
  for (int trial = 0; trial < 20; ++trial) {
    const Point3 xi(0.5 + 0.2 * rng.normal(), 0.5 + 0.2 * rng.normal(), 0.1 * rng.normal());
    double prev = std::numeric_limits<double>::infinity();
    for (double eps = 0.001; eps < 0.5; eps += 0.01) {
      const double m = chance_constraint_margin(g, xi, eps);
      EXPECT_LE(m, prev + 1e-12);
      prev = m;
    }
  }
}

// Every observed in-obstacle point of a half-space boundary is excluded.
TEST(Margin, ObservedObstaclePointsAreExcluded) {
  for (const double eps : {0.001, 0.01, 0.05}) {
    for (const Obstacle& o : {Obstacle{Ceiling{0.08}}, Obstacle{HalfSpace{Point3(1, 1, 0).normalized(), 0.7}}}) {
      const Point3 pos(0.4, 0.4, 0.0);
      const SensingResult s = sense_two_level(pos, o);
      ASSERT_FALSE(s.empty());
      const GpBelief g = gp_posterior(s.Z, s.y);
      for (Eigen::Index r = 0; r < s.Z.rows(); ++r) {
        if (s.y(r) < 0) continue;
        EXPECT_GT(chance_constraint_margin(g, s.Z.row(r).head<3>().transpose(), eps), 0.0);
      }
    }
  }
}

TEST(Margin, ConeResidualIsScaledMargin) {
  const SensingResult s = sense_two_level(Point3(0.5, 0.5, 0.0), Ceiling{0.08});
  const GpBelief g = gp_posterior(s.Z, s.y, 0.5);
  GaussianRng rng(65);
  for (const double eps : {0.01, 0.1, 0.3}) {
    const ChanceCone c = chance_cone(g, eps);
    for (int k = 0; k < 10; ++k) {
      const Point3 xi(rng.normal(), rng.normal(), rng.normal());
      EXPECT_NEAR(c.residual(xi) * std::abs(normal_quantile(eps)), chance_constraint_margin(g, xi, eps), 1e-12);
    }
  }
}

// At a point with zero margin the safe probability is exactly 1 − ε.
TEST(Margin, MonteCarloAtZeroMargin) {
  const SensingResult s = sense_two_level(Point3(0.5, 0.5, 0.0), Ceiling{0.08});
  const GpBelief g = gp_posterior(s.Z, s.y, 0.5);
  GaussianRng rng(66);
  for (const double eps : {0.05, 0.1, 0.3}) {
    // Bisection along z between a safe and an unsafe altitude.
    double lo = -0.5, hi = 0.08;
    auto margin = [&](double z) { return chance_constraint_margin(g, Point3(0.5, 0.5, z), eps); };
    ASSERT_LT(margin(lo), 0.0);
    ASSERT_GT(margin(hi), 0.0);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (margin(mid) <= 0.0 ? lo : hi) = mid;
    }
    const Point3 xi(0.5, 0.5, lo);
    EXPECT_NEAR(margin(lo), 0.0, 1e-9);
    constexpr int kSamples = 100000;
    const double p = testing::monte_carlo_safe_probability(g, xi, kSamples, rng);
    const double sigma = std::sqrt(eps * (1.0 - eps) / kSamples);
    EXPECT_NEAR(p, 1.0 - eps, 3.0 * sigma) << "eps " << eps;
  }
}

}  // namespace
}  // namespace wolfsocp
