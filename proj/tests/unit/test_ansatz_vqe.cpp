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

#include <random>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "espnor/ansatz.hpp"
#include "espnor/common.hpp"
#include "espnor/fci.hpp"
#include "espnor/instance.hpp"
#include "espnor/vqe.hpp"
#include "oracles.hpp"

namespace espnor {
namespace {

Eigen::VectorXcd as_vector(const StateVector& s) {
  return Eigen::Map<const Eigen::VectorXcd>(s.amplitudes().data(), static_cast<Eigen::Index>(s.dim()));
}

using Pairs = std::vector<std::pair<int, int>>;

TEST(Ansatz, LadderShapes) {
  const QnpAnsatz four = build_ansatz(QubitLayout{4}, 2, 2);
  EXPECT_EQ(four.g_pairs, (Pairs{{1, 2}, {0, 1}, {2, 3}}));
  EXPECT_EQ(four.px_pairs, four.g_pairs);
  EXPECT_EQ(four.n_parameters(), 9u);

  const QnpAnsatz two = build_ansatz(QubitLayout{2}, 1, 1);
  EXPECT_EQ(two.g_pairs, (Pairs{{0, 1}}));
  EXPECT_EQ(two.n_parameters(), 3u);

  EXPECT_EQ(build_ansatz(QubitLayout{3}, 1, 1).g_pairs.size(), 2u);
  EXPECT_EQ(build_ansatz(QubitLayout{3}, 2, 2).g_pairs.size(), 2u);
  EXPECT_EQ(build_ansatz(QubitLayout{3}, 0, 0).n_parameters(), 0u);
  EXPECT_EQ(build_ansatz(QubitLayout{3}, 3, 3).n_parameters(), 0u);
}

TEST(Ansatz, OpenShellIsRejected) {
  EXPECT_THROW(build_ansatz(QubitLayout{4}, 2, 1), InputError);
}

TEST(Ansatz, CircuitGateCounts) {
  const QnpAnsatz a = build_ansatz(QubitLayout{4}, 2, 2);
  const std::vector<double> theta(a.n_parameters(), 0.2);
  const Circuit c = ansatz_circuit(a, theta);
  int x = 0, px = 0, g = 0;
  for (const Gate& gate : c.gates) {
    x += gate.kind == GateKind::X;
    px += gate.kind == GateKind::PX;
    g += gate.kind == GateKind::G;
  }
  EXPECT_EQ(x, 4);
  EXPECT_EQ(px, 3);
  EXPECT_EQ(g, 6);
  EXPECT_THROW(ansatz_circuit(a, std::vector<double>(3, 0.0)), std::invalid_argument);
}

TEST(Ansatz, ZeroAnglesGiveTheReference) {
  for (auto conv : {OccupationConvention::one_is_occupied, OccupationConvention::zero_is_occupied}) {
    const QubitLayout layout{4, conv};
    const QnpAnsatz a = build_ansatz(layout, 2, 2);
    const StateVector psi = prepare(a, std::vector<double>(a.n_parameters(), 0.0));
    const std::uint64_t hf = hartree_fock_state(layout, 2, 2);
    EXPECT_NEAR(std::abs(psi[hf]), 1.0, 1e-15);
  }
}

TEST(Ansatz, StatesStayInTheSector) {
  std::mt19937_64 rng(3);
  for (auto conv : {OccupationConvention::one_is_occupied, OccupationConvention::zero_is_occupied}) {
    const QubitLayout layout{4, conv};
    const QnpAnsatz a = build_ansatz(layout, 2, 2);
    for (int t = 0; t < 10; ++t) {
      const StateVector psi = prepare(a, testing::random_angles(a.n_parameters(), rng));
      EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
      EXPECT_LT(sector_leakage(psi, layout, 2, 2), 1e-12);
    }
  }
}

TEST(Ansatz, OneRdmMatchesLadderOperators) {
  std::mt19937_64 rng(4);
  const QubitLayout layout{3};
  const QnpAnsatz a = build_ansatz(layout, 1, 1);
  const StateVector psi = prepare(a, testing::random_angles(a.n_parameters(), rng));
  const Eigen::MatrixXd expected = testing::dense_one_rdm(as_vector(psi), 3);
  EXPECT_LT((one_rdm(psi, layout) - expected).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(one_rdm(psi, layout).trace(), 2.0, 1e-12);
}

TEST(Ansatz, EnergyMatchesDenseOracleAndBoundsFci) {
  const ProblemInstance in = generate_synthetic_instance(4, 4, 2);
  const QubitLayout layout{4};
  const PauliSum h = jw_hamiltonian(in.h_act, in.g_act, in.E_core, layout);
  const Eigen::MatrixXd dense = testing::dense_hamiltonian(in.h_act, in.g_act, in.E_core);
  const QnpAnsatz a = build_ansatz(layout, 2, 2);
  const double e0 = exact_ground_state(in.h_act, in.g_act, in.E_core, 2, 2).E0;
  std::mt19937_64 rng(5);
  for (int t = 0; t < 8; ++t) {
    const auto theta = testing::random_angles(a.n_parameters(), rng);
    const Eigen::VectorXcd psi = as_vector(prepare(a, theta));
    const double oracle = (psi.adjoint() * dense.cast<testing::cd>() * psi)(0, 0).real();
    const double e = ansatz_energy(h, a, theta);
    EXPECT_NEAR(e, oracle, 1e-10);
    EXPECT_GE(e, e0 - 1e-10);
  }
}

TEST(Vqe, TwoElectronsInTwoOrbitalsReachFci) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const ProblemInstance in = generate_synthetic_instance(3, 2, seed);
    ASSERT_EQ(in.active.n_alpha, 1);
    const QubitLayout layout{2};
    const QnpAnsatz a = build_ansatz(layout, 1, 1);
    const VqeResult r = optimize(jw_hamiltonian(in.h_act, in.g_act, in.E_core, layout), a, OptimizerConfig{}, seed);
    const double e0 = exact_ground_state(in.h_act, in.g_act, in.E_core, 1, 1).E0;
    EXPECT_NEAR(r.energy, e0, 1e-8) << seed;
    EXPECT_GE(r.energy, e0 - 1e-10);
  }
}

TEST(Vqe, ResultBookkeeping) {
  const ProblemInstance in = generate_synthetic_instance(3, 2, 4);
  const QubitLayout layout{2};
  const QnpAnsatz a = build_ansatz(layout, 1, 1);
  const PauliSum h = jw_hamiltonian(in.h_act, in.g_act, in.E_core, layout);
  OptimizerConfig cfg;
  cfg.restarts = 3;
  const VqeResult r = optimize(h, a, cfg, 11);
  ASSERT_EQ(r.restart_energies.size(), 3u);
  EXPECT_EQ(r.energy, r.restart_energies[static_cast<std::size_t>(r.best_restart)]);
  for (double e : r.restart_energies) EXPECT_GE(e, r.energy);
  EXPECT_NEAR(ansatz_energy(h, a, r.theta), r.energy, 1e-12);
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.gradient_max_norm, 1e-5);
  ASSERT_FALSE(r.trace.empty());
  EXPECT_NEAR(r.trace.back().energy, r.energy, 1e-12);

  const VqeResult again = optimize(h, a, cfg, 11);
  EXPECT_EQ(again.theta, r.theta);
  EXPECT_EQ(again.trace.size(), r.trace.size());
}

TEST(Vqe, ConstantHamiltonian) {
  const QubitLayout layout{2};
  const PauliSum h = jw_hamiltonian(Eigen::MatrixXd::Zero(2, 2), EriTensor(2), 1.5, layout);
  const QnpAnsatz a = build_ansatz(layout, 1, 1);
  const VqeResult r = optimize(h, a, OptimizerConfig{}, 0);
  EXPECT_NEAR(r.energy, 1.5, 1e-14);
  EXPECT_NEAR(ansatz_energy(h, a, std::vector<double>{0.3, -1.0, 2.0}), 1.5, 1e-14);
}

TEST(Vqe, GradientMatchesSymmetricDifference) {
  const ProblemInstance in = generate_synthetic_instance(4, 4, 6);
  const QubitLayout layout{4};
  const PauliSum h = jw_hamiltonian(in.h_act, in.g_act, in.E_core, layout);
  const QnpAnsatz a = build_ansatz(layout, 2, 2);
  std::mt19937_64 rng(8);
  const auto theta = testing::random_angles(a.n_parameters(), rng, 0.5);
  const auto grad = ansatz_gradient(h, a, theta, 1e-5);
  for (std::size_t k = 0; k < theta.size(); ++k) {
    auto up = theta, down = theta;
    up[k] += 1e-4;
    down[k] -= 1e-4;
    EXPECT_NEAR(grad[k], (ansatz_energy(h, a, up) - ansatz_energy(h, a, down)) / 2e-4, 1e-6) << k;
  }
}

TEST(Vqe, TraceCsv) {
  EXPECT_EQ(trace_csv({{0, -1.0}, {1, -1.25}}), "iteration,energy_hartree\n0,-1\n1,-1.25\n");
}

TEST(Merge, IdentityRotationLeavesTheAnsatzState) {
  std::mt19937_64 rng(9);
  const QnpAnsatz a = build_ansatz(QubitLayout{4}, 2, 2);
  const auto theta = testing::random_angles(a.n_parameters(), rng);
  const StateVector merged = apply_circuit(merge_measurement_rotation(a, theta, OrthogonalRotation::identity(4)),
                                           StateVector(8));
  const Eigen::VectorXcd expected = as_vector(prepare(a, theta));
  EXPECT_NEAR(std::abs(expected.dot(as_vector(merged))), 1.0, 1e-12);
}

TEST(Merge, MatchesSequentialApplicationAndRotatesTheRdm) {
  std::mt19937_64 rng(10);
  for (auto conv : {OccupationConvention::one_is_occupied, OccupationConvention::zero_is_occupied}) {
    const QubitLayout layout{4, conv};
    const QnpAnsatz a = build_ansatz(layout, 2, 2);
    for (int t = 0; t < 5; ++t) {
      const auto theta = testing::random_angles(a.n_parameters(), rng);
      const OrthogonalRotation u(testing::random_orthogonal(4, rng));
      const Circuit merged = merge_measurement_rotation(a, theta, u);
      Circuit sequential = ansatz_circuit(a, theta);
      sequential.append(rotation_circuit(layout, decompose(u)));
      const StateVector m = apply_circuit(merged, StateVector(8));
      const StateVector s = apply_circuit(sequential, StateVector(8));
      EXPECT_NEAR(std::abs(as_vector(s).dot(as_vector(m))), 1.0, 1e-10);

      const Eigen::MatrixXd gamma = one_rdm(prepare(a, theta), layout);
      const Eigen::MatrixXd rotated = u.matrix().transpose() * gamma * u.matrix();
      EXPECT_LT((one_rdm(m, layout) - rotated).cwiseAbs().maxCoeff(), 1e-10);

      std::size_t g_gates = 0;
      for (const Gate& g : merged.gates) g_gates += g.kind == GateKind::G;
      EXPECT_LE(g_gates, 2u * 6u);
    }
  }
}

}  // namespace
}  // namespace espnor
