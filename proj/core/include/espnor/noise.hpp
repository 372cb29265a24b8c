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

#ifndef ESPNOR_NOISE_HPP
#define ESPNOR_NOISE_HPP

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "espnor/circuit.hpp"
#include "espnor/sampling.hpp"
#include "espnor/statevector.hpp"

namespace espnor {

/// Depolarizing rates per native gate. After a k-qubit gate, with
/// probability p a Pauli drawn uniformly from {I,X,Y,Z}^k hits the addressed
/// qubits, i.e. rho -> (1-p) rho + p Tr_Q(rho) (x) I/2^k. p = 1 therefore
/// fully depolarizes the addressed qubits.
struct NoiseSpec {
  double p1 = 3e-4;
  double p2 = 1.5e-2;

  void validate() const;
  bool is_noiseless() const noexcept { return p1 == 0.0 && p2 == 0.0; }
  bool operator==(const NoiseSpec&) const = default;
};

enum class NoiseMode { trajectory, density_matrix };

std::string_view to_string(NoiseMode m);
NoiseMode parse_noise_mode(std::string_view name);

/// Mixed state on n qubits, stored as a 2n-qubit vector: rho(r, c) sits at
/// index r | (c << n). Gates act as U on the low half and conj(U) on the high half.
class DensityMatrix {
 public:
  explicit DensityMatrix(int n_qubits);
  static DensityMatrix from_pure(const StateVector& psi);

  int n_qubits() const noexcept { return n_qubits_; }
  cplx operator()(std::size_t r, std::size_t c) const { return data_[r | (c << n_qubits_)]; }

  void apply_gate(const Gate& g);
  /// Depolarizing channel on the given qubits (one or two).
  void depolarize(std::span<const int> qubits, double p);

  double trace() const;
  Distribution probabilities() const;

 private:
  int n_qubits_;
  std::vector<cplx> data_;
};

/// Exact outcome distribution of a native circuit under the channel, starting
/// from |0...0>. Feasible up to about 10 qubits.
Distribution noisy_distribution(const Circuit& native, const NoiseSpec& noise);

/// Ordered shot stream of a noisy native circuit, starting from |0...0>.
/// trajectory: one Monte-Carlo trajectory per shot; density_matrix: i.i.d.
/// draws from noisy_distribution. Deterministic in `seed` and independent of
/// thread count. Throws std::invalid_argument on non-native gates.
std::vector<std::uint64_t> simulate_noisy_shots(const Circuit& native, const NoiseSpec& noise,
                                                std::uint64_t shots, std::uint64_t seed, NoiseMode mode);

BitstringCounts simulate_noisy(const Circuit& native, const NoiseSpec& noise, std::uint64_t shots,
                               std::uint64_t seed, NoiseMode mode);

}  // namespace espnor

#endif  // ESPNOR_NOISE_HPP
