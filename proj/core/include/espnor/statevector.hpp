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

#ifndef ESPNOR_STATEVECTOR_HPP
#define ESPNOR_STATEVECTOR_HPP

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "espnor/circuit.hpp"
#include "espnor/common.hpp"
#include "espnor/pauli.hpp"

namespace espnor {

/// Dense pure state on n qubits. Qubit k is bit k of the amplitude index.
class StateVector {
 public:
  explicit StateVector(int n_qubits = 0);

  static StateVector basis(int n_qubits, std::uint64_t index);
  /// Throws std::invalid_argument unless the 2-norm is 1 within 1e-10.
  static StateVector from_amplitudes(int n_qubits, std::vector<cplx> amplitudes);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  std::span<cplx> amplitudes() noexcept { return amps_; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;
  std::vector<double> probabilities() const;

 private:
  int n_qubits_ = 0;
  std::vector<cplx> amps_;
};

/// In-place gate kernel on a raw amplitude array of `n_qubits` qubits.
void apply_gate(std::span<cplx> amps, int n_qubits, const Gate& g);

/// Pauli on one qubit: which = 1 (X), 2 (Y), 3 (Z); 0 is the identity.
void apply_pauli(std::span<cplx> amps, int qubit, int which);

void apply_circuit_inplace(const Circuit& circuit, StateVector& state);
StateVector apply_circuit(const Circuit& circuit, StateVector state);

/// <psi|O|psi>.
double expectation(const StateVector& state, const PauliSum& observable);

/// Dense unitary of a circuit (column k is the image of basis state k).
/// Intended for at most ~10 qubits.
Eigen::MatrixXcd circuit_unitary(const Circuit& circuit);

/// max |e^{i phi} a - b| with phi chosen to best align a with b.
double phase_insensitive_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace espnor

#endif  // ESPNOR_STATEVECTOR_HPP
