// Copyright 2026 The espnor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "espnor/givens.hpp"
#include "oracles.hpp"

namespace espnor {
namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

GivensNetwork random_network(int n, int length, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, n - 2);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  GivensNetwork net{n, {}};
  for (int k = 0; k < length; ++k) {
    const int i = pick(rng);
    net.rotations.push_back({i, i + 1, angle(rng)});
  }
  return net;
}

TEST(GivensConvention, SingleRotationByPi) {
  const GivensNetwork net{2, {{0, 1, M_PI}}};
  Eigen::Matrix2d expect;
  expect << -1, 0, 0, -1;
  EXPECT_LT(max_abs(to_matrix(net) - expect), 1e-15);
}

TEST(GivensConvention, TwoRotationsComposeInApplicationOrder) {
  const double a = 0.4, b = -1.1;
  const GivensNetwork net{3, {{0, 1, a}, {1, 2, b}}};
  Eigen::Matrix3d r1, r2;
  r1 << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
  r2 << 1, 0, 0, 0, std::cos(b), -std::sin(b), 0, std::sin(b), std::cos(b);
  EXPECT_LT(max_abs(to_matrix(net) - r1 * r2), 1e-15);
}

TEST(GivensConvention, EmptyNetworkIsIdentity) {
  EXPECT_LT(max_abs(to_matrix(GivensNetwork{5, {}}) - Eigen::MatrixXd::Identity(5, 5)), 0.0 + 1e-300);
}

TEST(Decompose, IdentityGivesTrivialAngles) {
  const GivensNetwork net = decompose(OrthogonalRotation::identity(4));
  for (const auto& r : net.rotations) EXPECT_NEAR(std::remainder(r.angle, 2 * M_PI), 0.0, 1e-14);
  EXPECT_LT(max_abs(to_matrix(net) - Eigen::MatrixXd::Identity(4, 4)), 1e-14);
}

TEST(Decompose, TwoByTwoIsASingleRotation) {
  const double phi = 0.3;
  Eigen::Matrix2d u;
  u << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  const GivensNetwork net = decompose(OrthogonalRotation(u));
  ASSERT_EQ(net.rotations.size(), 1u);
  EXPECT_NEAR(net.rotations[0].angle, phi, 1e-12);
  EXPECT_LT(max_abs(to_matrix(net) - u), 1e-12);
}

TEST(Decompose, RandomRotationsRoundTrip) {
  std::mt19937_64 rng(2024);
  for (int n : {2, 3, 4})
    for (int t = 0; t < 50; ++t) {
      const Eigen::MatrixXd u = testing::random_orthogonal(n, rng);
      const GivensNetwork net = decompose(OrthogonalRotation(u));
      EXPECT_LE(net.rotations.size(), static_cast<std::size_t>(n * (n - 1) / 2));
      for (const auto& r : net.rotations) EXPECT_EQ(r.j, r.i + 1);
      EXPECT_LT(max_abs(to_matrix(net) - u), 1e-9);
    }
}

TEST(Merge, EmptyIsTheIdentityElement) {
  std::mt19937_64 rng(5);
  const GivensNetwork a = random_network(4, 7, rng);
  EXPECT_LT(max_abs(to_matrix(merge(a, GivensNetwork{4, {}})) - to_matrix(a)), 1e-12);
  EXPECT_LT(max_abs(to_matrix(merge(GivensNetwork{4, {}}, a)) - to_matrix(a)), 1e-12);
}

TEST(Merge, InverseCancels) {
  std::mt19937_64 rng(6);
  const GivensNetwork a = random_network(4, 9, rng);
  EXPECT_LT(max_abs(to_matrix(a) * to_matrix(a.inverse()) - Eigen::MatrixXd::Identity(4, 4)), 1e-12);
  EXPECT_LT(max_abs(to_matrix(merge(a, a.inverse())) - Eigen::MatrixXd::Identity(4, 4)), 1e-9);
}

TEST(Merge, MatchesMatrixProductAndIsShort) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const GivensNetwork a = random_network(4, 6, rng), b = random_network(4, 8, rng);
    const GivensNetwork m = merge(a, b);
    EXPECT_LE(m.rotations.size(), 6u);
    EXPECT_LT(max_abs(to_matrix(m) - to_matrix(a) * to_matrix(b)), 1e-9);
  }
}

TEST(Merge, DimensionMismatchThrows) {
  EXPECT_THROW(merge(GivensNetwork{3, {}}, GivensNetwork{4, {}}), std::invalid_argument);
}

TEST(FixDeterminant, PositiveInputUnchanged) {
  std::mt19937_64 rng(8);
  const Eigen::MatrixXd u = testing::random_orthogonal(4, rng);
  EXPECT_LT(max_abs(fix_determinant(u).matrix() - u), 0.0 + 1e-300);
}

TEST(FixDeterminant, NegatesTheLastColumn) {
  const Eigen::Vector3d d(1, 1, -1);
  const Eigen::MatrixXd u = d.asDiagonal();
  EXPECT_LT(max_abs(fix_determinant(u).matrix() - Eigen::MatrixXd::Identity(3, 3)), 1e-15);

  std::mt19937_64 rng(9);
  for (int t = 0; t < 10; ++t) {
    Eigen::MatrixXd o = testing::random_orthogonal(4, rng);
    o.col(2) *= -1.0;
    ASSERT_LT(o.determinant(), 0);
    const OrthogonalRotation r = fix_determinant(o);
    EXPECT_NEAR(r.matrix().determinant(), 1.0, 1e-12);
    EXPECT_LT(orthogonality_residual(r.matrix()), 1e-12);
  }
}

TEST(OrthogonalRotation, RejectsInvalidMatrices) {
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(3, 3);
  bad(0, 1) = 1e-6;
  EXPECT_THROW(OrthogonalRotation{bad}, std::invalid_argument);
  const Eigen::Vector2d d(1, -1);
  EXPECT_THROW(OrthogonalRotation{Eigen::MatrixXd(d.asDiagonal())}, std::invalid_argument);
}

}  // namespace
}  // namespace espnor
