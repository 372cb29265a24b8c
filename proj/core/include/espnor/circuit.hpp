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

#ifndef ESPNOR_CIRCUIT_HPP
#define ESPNOR_CIRCUIT_HPP

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace espnor {

/// Gate kinds. Angles follow:
///   RX(t)  = exp(-i t/2 X)        RZ(t) = exp(-i t/2 Z)
///   RXX(t) = exp(-i t X (x) X)    MS(t) = cos(t/2) I - i sin(t/2) X (x) X
///   G(t)   = [[c,-s],[s,c]] on span{|01>,|10>}, c = cos(t/2), s = sin(t/2)
///   PX(t)  = [[c,-s],[s,c]] on span{|1100>,|0011>}
/// Local states list qubits in operand order, so |01> is q0=0, q1=1.
enum class GateKind { RX, RZ, RXX, X, G, PX, MS };

std::string_view to_string(GateKind kind);
GateKind parse_gate_kind(std::string_view name);

int arity(GateKind kind) noexcept;
bool has_angle(GateKind kind) noexcept;
bool is_native(GateKind kind) noexcept;

struct Gate {
  GateKind kind = GateKind::X;
  std::array<int, 4> q{0, 0, 0, 0};
  double theta = 0.0;

  int arity() const noexcept { return espnor::arity(kind); }
  bool operator==(const Gate&) const = default;

  static Gate rx(int q0, double t) { return {GateKind::RX, {q0, 0, 0, 0}, t}; }
  static Gate rz(int q0, double t) { return {GateKind::RZ, {q0, 0, 0, 0}, t}; }
  static Gate rxx(int q0, int q1, double t) { return {GateKind::RXX, {q0, q1, 0, 0}, t}; }
  static Gate x(int q0) { return {GateKind::X, {q0, 0, 0, 0}, 0.0}; }
  static Gate g(int q0, int q1, double t) { return {GateKind::G, {q0, q1, 0, 0}, t}; }
  static Gate px(int a, int b, int c, int d, double t) { return {GateKind::PX, {a, b, c, d}, t}; }
  static Gate ms(int q0, int q1, double t) { return {GateKind::MS, {q0, q1, 0, 0}, t}; }
};

/// Inverse gate (every kind is inverted by negating its angle; X is self-inverse).
Gate inverse(const Gate& g);

/// Complex conjugate of the gate matrix, expressed as a gate.
Gate conjugate(const Gate& g);

/// 2^k x 2^k matrix in the gate's local basis; operand q0 is the most
/// significant bit of the local index.
Eigen::MatrixXcd gate_matrix(const Gate& g);

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;

  Circuit() = default;
  explicit Circuit(int n) : n_qubits(n) {}

  Circuit& add(const Gate& g) {
    gates.push_back(g);
    return *this;
  }
  Circuit& append(const Circuit& other);

  std::size_t size() const noexcept { return gates.size(); }
  bool operator==(const Circuit&) const = default;

  /// Throws std::invalid_argument on out-of-range or repeated operands, or
  /// non-finite angles.
  void validate() const;

  bool is_native() const noexcept;
};

/// Circuit whose unitary is the inverse of `c`.
Circuit inverse(const Circuit& c);

inline constexpr const char* kCircuitFormat = "espnor-circuit-v1";

/// Text form: header line, "qubits N", then one gate per line as
/// "KIND q... theta" (X carries no angle). '#' starts a comment.
std::string serialize_circuit(const Circuit& c);
Circuit parse_circuit(const std::string& text);
Circuit load_circuit(const std::filesystem::path& path);
void save_circuit(const Circuit& c, const std::filesystem::path& path);

}  // namespace espnor

#endif  // ESPNOR_CIRCUIT_HPP
