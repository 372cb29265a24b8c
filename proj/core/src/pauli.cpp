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

#include "espnor/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "espnor/bitstring.hpp"

namespace espnor {

namespace {

const cplx kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

// P|i> = i^{|x&z|} (-1)^{|z&i|} |i ^ x>
inline cplx action_phase(const PauliWord& w, std::uint64_t i) {
  int k = popcount(w.x & w.z) + 2 * popcount(w.z & i);
  return kIPowers[k & 3];
}

}  // namespace

PauliWord parse_pauli_word(std::string_view letters) {
  PauliWord w;
  if (letters.size() > 64) throw std::invalid_argument("Pauli word longer than 64 qubits");
  for (std::size_t k = 0; k < letters.size(); ++k) {
    const std::uint64_t bit = 1ULL << k;
    switch (letters[k]) {
      case 'I': break;
      case 'X': w.x |= bit; break;
      case 'Y': w.x |= bit; w.z |= bit; break;
      case 'Z': w.z |= bit; break;
      default: throw std::invalid_argument("Pauli word letters must be I, X, Y or Z");
    }
  }
  return w;
}

std::string to_string(const PauliWord& w, int n_qubits) {
  std::string s(static_cast<std::size_t>(n_qubits), 'I');
  for (int k = 0; k < n_qubits; ++k) {
    const bool x = (w.x >> k) & 1ULL;
    const bool z = (w.z >> k) & 1ULL;
    s[static_cast<std::size_t>(k)] = x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
  }
  return s;
}

std::pair<cplx, PauliWord> multiply(const PauliWord& a, const PauliWord& b) {
  // P = i^{y} X^x Z^z with y = |x&z|; Z^za X^xb = (-1)^{|za&xb|} X^xb Z^za.
  const PauliWord r{a.x ^ b.x, a.z ^ b.z};
  int k = popcount(a.x & a.z) + popcount(b.x & b.z) - popcount(r.x & r.z) + 2 * popcount(a.z & b.x);
  return {kIPowers[((k % 4) + 4) % 4], r};
}

void PauliSum::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const PauliTerm& l, const PauliTerm& r) { return l.word < r.word; });
  std::vector<PauliTerm> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().word == t.word)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(t);
  }
  std::erase_if(merged, [](const PauliTerm& t) { return t.coeff == 0.0; });
  terms_ = std::move(merged);
}

PauliSum& PauliSum::add(double coeff, const PauliWord& word) {
  if (!std::isfinite(coeff)) throw std::invalid_argument("Pauli coefficient must be finite");
  if ((word.x | word.z) & ~low_mask(n_qubits_))
    throw std::invalid_argument("Pauli word acts outside the register");
  terms_.push_back({coeff, word});
  canonicalize();
  return *this;
}

PauliSum& PauliSum::add(double coeff, std::string_view letters) {
  if (static_cast<int>(letters.size()) != n_qubits_)
    throw std::invalid_argument("Pauli word length does not match the register");
  return add(coeff, parse_pauli_word(letters));
}

PauliSum PauliSum::from_terms(int n_qubits, std::vector<PauliTerm> terms) {
  PauliSum s(n_qubits);
  for (const auto& t : terms) {
    if (!std::isfinite(t.coeff)) throw std::invalid_argument("Pauli coefficient must be finite");
    if ((t.word.x | t.word.z) & ~low_mask(n_qubits))
      throw std::invalid_argument("Pauli word acts outside the register");
  }
  s.terms_ = std::move(terms);
  s.canonicalize();
  return s;
}

double PauliSum::coefficient(const PauliWord& word) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), word,
                             [](const PauliTerm& t, const PauliWord& w) { return t.word < w; });
  return (it != terms_.end() && it->word == word) ? it->coeff : 0.0;
}

void PauliSum::apply(std::span<const cplx> in, std::span<cplx> out) const {
  const std::size_t dim = std::size_t{1} << n_qubits_;
  if (in.size() != dim || out.size() != dim) throw std::invalid_argument("PauliSum::apply dimension mismatch");
  std::fill(out.begin(), out.end(), cplx{});
  for (const auto& t : terms_)
    for (std::uint64_t i = 0; i < dim; ++i) out[i ^ t.word.x] += t.coeff * action_phase(t.word, i) * in[i];
}

double PauliSum::expectation(std::span<const cplx> psi, double* imag) const {
  const std::size_t dim = std::size_t{1} << n_qubits_;
  if (psi.size() != dim) throw std::invalid_argument("expectation: state dimension mismatch");
  cplx total{};
  for (const auto& t : terms_) {
    cplx acc{};
    if (t.word.x == 0) {
      for (std::uint64_t i = 0; i < dim; ++i)
        acc += (popcount(t.word.z & i) & 1) ? -std::norm(psi[i]) : std::norm(psi[i]);
    } else {
      for (std::uint64_t i = 0; i < dim; ++i) acc += std::conj(psi[i ^ t.word.x]) * action_phase(t.word, i) * psi[i];
    }
    total += t.coeff * acc;
  }
  if (imag) *imag = total.imag();
  return total.real();
}

Eigen::MatrixXcd PauliSum::to_dense() const {
  if (n_qubits_ > 14) throw std::invalid_argument("to_dense limited to 14 qubits");
  const Eigen::Index dim = Eigen::Index{1} << n_qubits_;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : terms_)
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(dim); ++i)
      m(static_cast<Eigen::Index>(i ^ t.word.x), static_cast<Eigen::Index>(i)) += t.coeff * action_phase(t.word, i);
  return m;
}

PauliSum PauliSum::operator+(const PauliSum& other) const {
  if (other.n_qubits_ != n_qubits_) throw std::invalid_argument("PauliSum register mismatch");
  std::vector<PauliTerm> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return from_terms(n_qubits_, std::move(all));
}

PauliSum PauliSum::operator*(double scale) const {
  std::vector<PauliTerm> all = terms_;
  for (auto& t : all) t.coeff *= scale;
  return from_terms(n_qubits_, std::move(all));
}

}  // namespace espnor
