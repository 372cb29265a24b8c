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

#ifndef ESPNOR_JORDAN_WIGNER_HPP
#define ESPNOR_JORDAN_WIGNER_HPP

#include <cstdint>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

#include "espnor/instance.hpp"
#include "espnor/pauli.hpp"

namespace espnor {

enum class Spin { alpha, beta };

/// Which computational value of a qubit means "orbital occupied".
enum class OccupationConvention { one_is_occupied, zero_is_occupied };

std::string_view to_string(OccupationConvention c);
OccupationConvention parse_occupation_convention(std::string_view name);

/// Spin-block Jordan-Wigner layout: alpha spin-orbitals on qubits 0..N-1,
/// beta spin-orbitals on qubits N..2N-1.
struct QubitLayout {
  int n_spatial = 0;
  OccupationConvention convention = OccupationConvention::one_is_occupied;

  int n_qubits() const noexcept { return 2 * n_spatial; }
  int qubit(int orbital, Spin spin) const noexcept {
    return spin == Spin::alpha ? orbital : orbital + n_spatial;
  }

  /// Occupation (0/1) of a qubit in basis state `index`.
  int occupied(std::uint64_t index, int qubit) const noexcept {
    const int bit = static_cast<int>((index >> qubit) & 1ULL);
    return convention == OccupationConvention::one_is_occupied ? bit : 1 - bit;
  }
  /// Electrons in the alpha / beta block of basis state `index`.
  int count_alpha(std::uint64_t index) const noexcept;
  int count_beta(std::uint64_t index) const noexcept;
  /// Spatial-orbital occupation n_{v,alpha} + n_{v,beta} in [0, 2].
  int spatial_occupation(std::uint64_t index, int orbital) const noexcept {
    return occupied(index, orbital) + occupied(index, orbital + n_spatial);
  }
};

/// Qubit image of E_core + sum h_pq a+_p a_q + 1/2 sum (pq|rs) a+_p a+_r a_s a_q
/// (spin-restricted, both spins). Z strings run over lower qubit indices;
/// under zero_is_occupied the operator is conjugated by a full X layer.
PauliSum jw_hamiltonian(const Eigen::MatrixXd& h_act, const EriTensor& g_act, double e_core,
                        const QubitLayout& layout);

/// Number operators of the alpha and beta blocks.
std::pair<PauliSum, PauliSum> number_operators(const QubitLayout& layout);

/// Basis index of the reference determinant with the lowest n_alpha alpha and
/// n_beta beta orbitals occupied.
std::uint64_t hartree_fock_state(const QubitLayout& layout, int n_alpha, int n_beta);

}  // namespace espnor

#endif  // ESPNOR_JORDAN_WIGNER_HPP
