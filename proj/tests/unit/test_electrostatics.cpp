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

#include "espnor/electrostatics.hpp"
#include "espnor/fci.hpp"
#include "espnor/instance.hpp"
#include "oracles.hpp"

namespace espnor {
namespace {

// Four-term electrostatic energy evaluated directly in the AO basis.
double four_term_energy(const ProblemInstance& in, const Eigen::MatrixXd& ga) {
  const int n = in.n_ao;
  double e = in.V_AB;
  for (int p = 0; p < n; ++p)
    for (int pp = 0; pp < n; ++pp) {
      e += ga(p, pp) * in.V_B_ao(p, pp) + in.V_A_ao(p, pp) * in.gamma_B_ao(p, pp);
      for (int q = 0; q < n; ++q)
        for (int qq = 0; qq < n; ++qq) e += ga(p, pp) * in.eri_ao(p, pp, q, qq) * in.gamma_B_ao(q, qq);
    }
  return e;
}

Eigen::MatrixXd random_active_rdm(int n, int electrons, std::mt19937_64& rng) {
  // Ensemble of occupations rotated into a random orbital basis.
  std::uniform_real_distribution<double> occ(0.1, 1.9);
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = occ(rng);
  d *= electrons / d.sum();
  const Eigen::MatrixXd q = testing::random_orthogonal(n, rng);
  return q * d.asDiagonal() * q.transpose();
}

TEST(Esp, ContractionReproducesTheFourTermSum) {
  std::mt19937_64 rng(1);
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const ProblemInstance in = generate_synthetic_instance(5, 3, seed);
    const EspMatrix esp = build_esp_matrix(in);
    const Eigen::MatrixXd gamma_act = random_active_rdm(3, in.active.n_alpha + in.active.n_beta, rng);
    const Eigen::MatrixXd ga = mo_to_ao(in, promote_to_mo(in, gamma_act));
    const double oracle = four_term_energy(in, ga);
    EXPECT_NEAR((esp.J_ao.array() * ga.array()).sum(), oracle, 1e-10);
    EXPECT_NEAR(electrostatics_direct_ao(in, ga).e_elst, oracle, 1e-10);
    EXPECT_NEAR(electrostatics_mo_contraction(esp, in.active, promote_to_mo(in, gamma_act)).e_elst, oracle, 1e-10);
  }
}

TEST(Esp, AoRouteTermsAndElectronCount) {
  const ProblemInstance in = generate_synthetic_instance(4, 2, 3);
  const Eigen::MatrixXd gamma_act = Eigen::Vector2d(2.0, 0.0).asDiagonal();
  const Eigen::MatrixXd ga = mo_to_ao(in, promote_to_mo(in, gamma_act));
  const ElectrostaticsResult r = electrostatics_direct_ao(in, ga);
  EXPECT_EQ(r.terms.size(), 4u);
  double sum = 0.0;
  for (const auto& [name, v] : r.terms) sum += v;
  EXPECT_NEAR(sum, r.e_elst, 1e-12);
  EXPECT_NEAR(r.core_term + r.active_term, r.e_elst, 1e-12);
  EXPECT_THROW(electrostatics_direct_ao(in, 0.5 * ga), std::invalid_argument);
}

TEST(Esp, NaturalBasisOfTheSwapMatrix) {
  Eigen::MatrixXd j(2, 2);
  j << 0, 1, 1, 0;
  ActiveSpaceSpec act;
  act.active_mo = {0, 1};
  const EspNaturalBasis b = esp_natural_basis(j, act);
  EXPECT_NEAR(b.w(0), -1.0, 1e-15);
  EXPECT_NEAR(b.w(1), 1.0, 1e-15);
  const double r = 1 / std::sqrt(2.0);
  Eigen::MatrixXd expected(2, 2);
  expected << r, r, -r, r;
  EXPECT_LT((b.U.matrix() - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Esp, NaturalBasisDiagonalizesTheActiveBlock) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const ProblemInstance in = generate_synthetic_instance(6, 4, seed);
    const EspMatrix esp = build_esp_matrix(in);
    const EspNaturalBasis b = esp_natural_basis(esp.J_mo, in.active);
    const Eigen::MatrixXd& u = b.U.matrix();
    EXPECT_NEAR(u.determinant(), 1.0, 1e-12);
    EXPECT_LT((u * b.w.asDiagonal() * u.transpose() - b.J_act).cwiseAbs().maxCoeff(), 1e-12);
    for (int v = 0; v + 1 < 4; ++v) EXPECT_LE(b.w(v), b.w(v + 1));
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) EXPECT_EQ(b.J_act(i, k), esp.J_mo(in.active.active_mo[i], in.active.active_mo[k]));
  }
}

TEST(Esp, NaturalBasisRejectsBadInput) {
  ActiveSpaceSpec act;
  act.active_mo = {0, 1};
  Eigen::MatrixXd asym(2, 2);
  asym << 0, 1, 2, 0;
  EXPECT_THROW(esp_natural_basis(asym, act), std::invalid_argument);
  act.active_mo = {0, 2};
  EXPECT_THROW(esp_natural_basis(Eigen::MatrixXd::Identity(2, 2), act), std::invalid_argument);
}

TEST(Esp, DiagonalRouteEqualsFullContraction) {
  std::mt19937_64 rng(7);
  const ProblemInstance in = generate_synthetic_instance(6, 4, 9);
  const EspMatrix esp = build_esp_matrix(in);
  const EspNaturalBasis b = esp_natural_basis(esp.J_mo, in.active);
  const Eigen::MatrixXd gamma = random_active_rdm(4, 4, rng);
  const Eigen::VectorXd gbar = (b.U.matrix().transpose() * gamma * b.U.matrix()).diagonal();
  const ElectrostaticsResult diag = electrostatics_from_diag_rdm(b.w, gbar, core_diagonal(esp.J_mo, in.active));
  const double oracle = four_term_energy(in, mo_to_ao(in, promote_to_mo(in, gamma)));
  EXPECT_NEAR(diag.e_elst, oracle, 1e-10);
  EXPECT_NEAR(diag.active_term, (b.J_act.array() * gamma.array()).sum(), 1e-12);
}

TEST(Esp, DiagonalRouteChecksOccupations) {
  const Eigen::VectorXd w = Eigen::Vector2d(1.0, 2.0);
  const Eigen::VectorXd core = Eigen::VectorXd::Constant(1, 0.5);
  const ElectrostaticsResult r = electrostatics_from_diag_rdm(w, Eigen::Vector2d(2.0, 0.0), core);
  EXPECT_DOUBLE_EQ(r.e_elst, 1.0 + 2.0);
  EXPECT_THROW(electrostatics_from_diag_rdm(w, Eigen::Vector2d(2.1, 0.0), core), std::invalid_argument);
  EXPECT_THROW(electrostatics_from_diag_rdm(w, Eigen::Vector2d(-0.01, 0.0), core), std::invalid_argument);
  EXPECT_THROW(electrostatics_from_diag_rdm(w, Eigen::VectorXd::Ones(3), core), std::invalid_argument);
}

TEST(Esp, OneBodyProxyIsTheTraceForCommutingRdm) {
  std::mt19937_64 rng(5);
  const int n = 4;
  Eigen::MatrixXd h = Eigen::MatrixXd::Random(n, n);
  h = 0.5 * (h + h.transpose()).eval();
  const OrthogonalRotation u(testing::random_orthogonal(n, rng));
  const Eigen::VectorXd d = Eigen::Vector4d(1.9, 1.2, 0.7, 0.2);
  const Eigen::MatrixXd gamma = u.matrix() * d.asDiagonal() * u.matrix().transpose();
  const EnergyEstimate e = one_body_diag_energy(h, u, d);
  EXPECT_NEAR(e.mean, (h.array() * gamma.array()).sum(), 1e-12);
  EXPECT_EQ(e.sem, 0.0);
  EXPECT_THROW(one_body_diag_energy(h, u, Eigen::VectorXd::Ones(3)), std::invalid_argument);
}

TEST(Esp, RequiresBothMonomersToHoldElectrons) {
  ProblemInstance in = generate_synthetic_instance(3, 2, 1);
  in.N_B = 0;
  EXPECT_THROW(build_esp_matrix(in), std::invalid_argument);
}

}  // namespace
}  // namespace espnor
