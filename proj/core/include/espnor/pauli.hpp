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

#ifndef ESPNOR_PAULI_HPP
#define ESPNOR_PAULI_HPP

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "espnor/common.hpp"

namespace espnor {

/// Tensor product of single-qubit Paulis, stored as X and Z bit masks
/// (Y sets both bits). Qubit k is bit k.
struct PauliWord {
  std::uint64_t x = 0;
  std::uint64_t z = 0;

  auto operator<=>(const PauliWord&) const = default;

  bool is_identity() const noexcept { return x == 0 && z == 0; }
  bool is_diagonal() const noexcept { return x == 0; }
};

PauliWord parse_pauli_word(std::string_view letters);
std::string to_string(const PauliWord& word, int n_qubits);

/// a*b = phase * result; phase is a power of i.
std::pair<cplx, PauliWord> multiply(const PauliWord& a, const PauliWord& b);

struct PauliTerm {
  double coeff = 0.0;
  PauliWord word;
};

/// Real linear combination of Pauli words (hence Hermitian). Terms are kept
/// in canonical form: sorted by word, merged, exact zeros removed.
class PauliSum {
 public:
  explicit PauliSum(int n_qubits = 0) : n_qubits_(n_qubits) {}

  int n_qubits() const noexcept { return n_qubits_; }
  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Adds a term and re-canonicalizes.
  PauliSum& add(double coeff, const PauliWord& word);
  PauliSum& add(double coeff, std::string_view letters);

  /// Bulk construction; canonicalizes once.
  static PauliSum from_terms(int n_qubits, std::vector<PauliTerm> terms);

  double coefficient(const PauliWord& word) const;
  double identity_coefficient() const { return coefficient(PauliWord{}); }

  /// y = P x for this operator.
  void apply(std::span<const cplx> in, std::span<cplx> out) const;

  /// <psi|O|psi>; the imaginary residual is returned through `imag` if given.
  double expectation(std::span<const cplx> psi, double* imag = nullptr) const;

  /// Dense 2^n x 2^n matrix; intended for n <= 12.
  Eigen::MatrixXcd to_dense() const;

  PauliSum operator+(const PauliSum& other) const;
  PauliSum operator*(double scale) const;

 private:
  void canonicalize();

  int n_qubits_ = 0;
  std::vector<PauliTerm> terms_;
};

}  // namespace espnor

#endif  // ESPNOR_PAULI_HPP
