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

#ifndef ESPNOR_FCI_HPP
#define ESPNOR_FCI_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "espnor/electrostatics.hpp"
#include "espnor/instance.hpp"

namespace espnor {

/// Determinants with fixed (n_alpha, n_beta) over N spatial orbitals. Each
/// determinant is a 2N-bit occupation mask laid out like the qubit register
/// (alpha on bits 0..N-1, beta on N..2N-1). Ordered lexicographically by
/// bitstring, so the same ordering as the spin-block qubit convention.
class SectorBasis {
 public:
  SectorBasis(int n_spatial, int n_alpha, int n_beta);

  int n_spatial() const noexcept { return n_; }
  int n_alpha() const noexcept { return na_; }
  int n_beta() const noexcept { return nb_; }
  std::size_t size() const noexcept { return dets_.size(); }
  std::uint64_t determinant(std::size_t i) const { return dets_.at(i); }
  const std::vector<std::uint64_t>& determinants() const noexcept { return dets_; }
  /// Position of `det`, or -1 when it lies outside the sector.
  long index_of(std::uint64_t det) const;

 private:
  int n_, na_, nb_;
  std::vector<std::uint64_t> dets_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Dense sector matrix of E_core + sum h a+a + 1/2 sum (pq|rs) a+_p a+_r a_s a_q
/// with creation-operator signs (-1)^(occupied modes below).
Eigen::MatrixXd sector_hamiltonian(const Eigen::MatrixXd& h, const EriTensor& g, double e_core,
                                   const SectorBasis& basis);

struct ExactSolution {
  double E0 = 0.0;
  Eigen::VectorXd vector;
  Eigen::MatrixXd gamma;  // spin-summed active 1-PDM
  double residual = 0.0;  // ||H v - E0 v||
  SectorBasis basis;
};

/// Lowest eigenpair of the sector Hamiltonian (dense, N <= 6). The
/// eigenvector sign makes its first non-negligible component positive.
ExactSolution exact_ground_state(const Eigen::MatrixXd& h_act, const EriTensor& g_act, double e_core, int n_alpha,
                                 int n_beta);

/// Spin-summed 1-PDM of a sector vector.
Eigen::MatrixXd sector_one_rdm(const SectorBasis& basis, const Eigen::VectorXd& v);

struct ExactElectrostatics {
  ExactSolution solution;
  ElectrostaticsResult ao_direct;
  ElectrostaticsResult mo_contraction;
  ElectrostaticsResult diagonal;
  Eigen::VectorXd gamma_bar_diag;  // diag(U^T gamma_act U)
  double route_discrepancy = 0.0;
};

/// FCI 1-PDM of monomer A pushed through every electrostatics route. Throws
/// std::runtime_error if the AO and diagonal routes differ by more than 1e-9.
ExactElectrostatics exact_electrostatics(const ProblemInstance& instance);

/// E_AB - E_A - E_B from the three sector ground states.
double supermolecular_interaction(const ProblemInstance& dimer, const ProblemInstance& mono_a,
                                  const ProblemInstance& mono_b);

}  // namespace espnor

#endif  // ESPNOR_FCI_HPP
