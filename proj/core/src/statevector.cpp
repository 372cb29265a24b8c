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

#include "espnor/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace espnor {

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0 || n_qubits > 30) throw std::invalid_argument("StateVector: unsupported qubit count");
  amps_.assign(std::size_t{1} << n_qubits, cplx{});
  amps_[0] = 1.0;
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
  StateVector s(n_qubits);
  if (index >= s.dim()) throw std::invalid_argument("StateVector::basis: index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(int n_qubits, std::vector<cplx> amplitudes) {
  StateVector s(n_qubits);
  if (amplitudes.size() != s.dim()) throw std::invalid_argument("StateVector: amplitude count mismatch");
  s.amps_ = std::move(amplitudes);
  const double n = s.norm();
  if (std::abs(n - 1.0) > 1e-10)
    throw std::invalid_argument("StateVector: norm " + std::to_string(n) + " differs from 1");
  return s;
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const cplx& a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
  return p;
}

namespace {

constexpr cplx kI{0.0, 1.0};

// exp(-i a P) on the pair (i, j = P i) for a real bit-flip Pauli P.
inline void flip_rotation(std::span<cplx> amps, std::size_t i, std::size_t j, double c, double s) {
  const cplx x = amps[i], y = amps[j];
  amps[i] = c * x - kI * s * y;
  amps[j] = c * y - kI * s * x;
}

inline void planar(std::span<cplx> amps, std::size_t i, std::size_t j, double c, double s) {
  const cplx x = amps[i], y = amps[j];
  amps[i] = c * x - s * y;
  amps[j] = s * x + c * y;
}

}  // namespace

void apply_gate(std::span<cplx> amps, int n_qubits, const Gate& g) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (amps.size() != dim) throw std::invalid_argument("apply_gate: amplitude count mismatch");
  for (int k = 0; k < g.arity(); ++k)
    if (g.q[k] < 0 || g.q[k] >= n_qubits) throw std::invalid_argument("apply_gate: qubit index out of range");
  const std::size_t b0 = std::size_t{1} << g.q[0];
  const std::size_t b1 = g.arity() > 1 ? std::size_t{1} << g.q[1] : 0;
  switch (g.kind) {
    case GateKind::RX: {
      const double c = std::cos(g.theta / 2), s = std::sin(g.theta / 2);
      for (std::size_t i = 0; i < dim; ++i)
        if (!(i & b0)) flip_rotation(amps, i, i | b0, c, s);
      return;
    }
    case GateKind::RZ: {
      const cplx e0 = std::exp(-kI * (g.theta / 2)), e1 = std::conj(e0);
      for (std::size_t i = 0; i < dim; ++i) amps[i] *= (i & b0) ? e1 : e0;
      return;
    }
    case GateKind::X: {
      for (std::size_t i = 0; i < dim; ++i)
        if (!(i & b0)) std::swap(amps[i], amps[i | b0]);
      return;
    }
    case GateKind::RXX:
    case GateKind::MS: {
      const double a = g.kind == GateKind::RXX ? g.theta : g.theta / 2;
      const double c = std::cos(a), s = std::sin(a);
      for (std::size_t i = 0; i < dim; ++i)
        if (!(i & b0)) flip_rotation(amps, i, i ^ (b0 | b1), c, s);
      return;
    }
    case GateKind::G: {
      const double c = std::cos(g.theta / 2), s = std::sin(g.theta / 2);
      const std::size_t m = b0 | b1;
      for (std::size_t i = 0; i < dim; ++i)
        if (!(i & m)) planar(amps, i | b1, i | b0, c, s);
      return;
    }
    case GateKind::PX: {
      const double c = std::cos(g.theta / 2), s = std::sin(g.theta / 2);
      const std::size_t b2 = std::size_t{1} << g.q[2], b3 = std::size_t{1} << g.q[3];
      const std::size_t m = b0 | b1 | b2 | b3;
      for (std::size_t i = 0; i < dim; ++i)
        if (!(i & m)) planar(amps, i | b0 | b1, i | b2 | b3, c, s);
      return;
    }
  }
  throw std::invalid_argument("apply_gate: unsupported gate kind");
}

void apply_pauli(std::span<cplx> amps, int qubit, int which) {
  const std::size_t b = std::size_t{1} << qubit;
  const std::size_t dim = amps.size();
  switch (which) {
    case 0: return;
    case 1:
      for (std::size_t i = 0; i < dim; ++i)
        if (!(i & b)) std::swap(amps[i], amps[i | b]);
      return;
    case 2:
      // Y|0> = i|1>, Y|1> = -i|0>.
      for (std::size_t i = 0; i < dim; ++i)
        if (!(i & b)) {
          const cplx x = amps[i], y = amps[i | b];
          amps[i] = -kI * y;
          amps[i | b] = kI * x;
        }
      return;
    case 3:
      for (std::size_t i = 0; i < dim; ++i)
        if (i & b) amps[i] = -amps[i];
      return;
    default: throw std::invalid_argument("apply_pauli: which must be 0..3");
  }
}

void apply_circuit_inplace(const Circuit& circuit, StateVector& state) {
  if (circuit.n_qubits != state.n_qubits()) throw std::invalid_argument("apply_circuit: qubit count mismatch");
  circuit.validate();
  for (const Gate& g : circuit.gates) apply_gate(state.amplitudes(), state.n_qubits(), g);
}

StateVector apply_circuit(const Circuit& circuit, StateVector state) {
  apply_circuit_inplace(circuit, state);
  return state;
}

double expectation(const StateVector& state, const PauliSum& observable) {
  if (observable.n_qubits() != state.n_qubits()) throw std::invalid_argument("expectation: qubit count mismatch");
  return observable.expectation(state.amplitudes());
}

Eigen::MatrixXcd circuit_unitary(const Circuit& circuit) {
  if (circuit.n_qubits > 12) throw std::invalid_argument("circuit_unitary: too many qubits for a dense unitary");
  circuit.validate();
  const std::size_t dim = std::size_t{1} << circuit.n_qubits;
  Eigen::MatrixXcd u(dim, dim);
  std::vector<cplx> col(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    std::fill(col.begin(), col.end(), cplx{});
    col[k] = 1.0;
    for (const Gate& g : circuit.gates) apply_gate(col, circuit.n_qubits, g);
    for (std::size_t i = 0; i < dim; ++i) u(i, k) = col[i];
  }
  return u;
}

double phase_insensitive_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("phase_insensitive_distance: shape mismatch");
  const cplx overlap = (a.adjoint() * b).trace();
  const cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx(1.0);
  return (phase * a - b).cwiseAbs().maxCoeff();
}

}  // namespace espnor
