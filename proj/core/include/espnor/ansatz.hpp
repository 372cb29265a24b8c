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

#ifndef ESPNOR_ANSATZ_HPP
#define ESPNOR_ANSATZ_HPP

#include <span>
#include <utility>
#include <vector>

#include "espnor/circuit.hpp"
#include "espnor/givens.hpp"
#include "espnor/jordan_wigner.hpp"
#include "espnor/statevector.hpp"

namespace espnor {

/// One-layer quantum-number-preserving ansatz: HF reference, a PX pair-move
/// layer, then one G ladder per spin block.
///
/// Parameter layout: [PX angles | alpha G angles | beta G angles], each block
/// ordered like its pair list.
struct QnpAnsatz {
  QubitLayout layout;
  int n_alpha = 0;
  int n_beta = 0;
  std::vector<std::pair<int, int>> px_pairs;
  std::vector<std::pair<int, int>> g_pairs;

  std::size_t n_parameters() const noexcept { return px_pairs.size() + 2 * g_pairs.size(); }
};

/// Ladder of adjacent spatial pairs: starts at (n_occ-1, n_occ) and grows
/// outward, taking the pair above the covered block before the one below,
/// until orbitals 0 and N-1 are covered (N-1 pairs). Fully empty or fully
/// occupied spaces give an empty ladder. Open-shell requests throw InputError.
QnpAnsatz build_ansatz(const QubitLayout& layout, int n_alpha, int n_beta);

/// X gates turning |0...0> into the reference determinant.
Circuit reference_circuit(const QubitLayout& layout, int n_alpha, int n_beta);

/// Full ansatz circuit from |0...0>. Under zero_is_occupied the G/PX angles
/// are negated, since a full X layer maps G(t) to G(-t) and PX(t) to PX(-t).
Circuit ansatz_circuit(const QnpAnsatz& ansatz, std::span<const double> theta);

StateVector prepare(const QnpAnsatz& ansatz, std::span<const double> theta);

/// The ansatz G ladder of one spin block as an orbital-space network:
/// G(t) on (i, i+1) is the planar rotation (i, i+1, t/2).
GivensNetwork ladder_network(const QnpAnsatz& ansatz, std::span<const double> theta, Spin spin);

/// G gates realizing `net` on both spin blocks (alpha first).
Circuit rotation_circuit(const QubitLayout& layout, const GivensNetwork& net);

/// Reference + PX layer + one merged network per spin equal to the ansatz
/// ladder followed by the network of `u`.
Circuit merge_measurement_rotation(const QnpAnsatz& ansatz, std::span<const double> theta,
                                   const OrthogonalRotation& u);

/// Spin-summed 1-PDM gamma_pq = sum_s <a+_ps a_qs> of a state in `layout`.
Eigen::MatrixXd one_rdm(const StateVector& state, const QubitLayout& layout);

/// Probability mass outside the (n_alpha, n_beta) sector.
double sector_leakage(const StateVector& state, const QubitLayout& layout, int n_alpha, int n_beta);

}  // namespace espnor

#endif  // ESPNOR_ANSATZ_HPP
