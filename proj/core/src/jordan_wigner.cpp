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

#include "espnor/jordan_wigner.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "espnor/bitstring.hpp"

namespace espnor {

namespace {

// Operators with complex coefficients, only used while assembling.
using ComplexSum = std::map<PauliWord, cplx>;

ComplexSum ladder(int mode, bool creation) {
  // a+_j = Z_0..Z_{j-1} (X_j - iY_j)/2 ; a_j = Z_0..Z_{j-1} (X_j + iY_j)/2
  const std::uint64_t string = low_mask(mode);
  const std::uint64_t bit = 1ULL << mode;
  const double sign = creation ? -1.0 : 1.0;
  return {{PauliWord{bit, string}, cplx{0.5, 0.0}}, {PauliWord{bit, string | bit}, cplx{0.0, 0.5 * sign}}};
}

ComplexSum product(const ComplexSum& a, const ComplexSum& b) {
  ComplexSum out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) {
      auto [phase, w] = multiply(wa, wb);
      out[w] += ca * cb * phase;
    }
  return out;
}

void accumulate(ComplexSum& into, const ComplexSum& term, double scale) {
  for (const auto& [w, c] : term) into[w] += scale * c;
}

}  // namespace

std::string_view to_string(OccupationConvention c) {
  return c == OccupationConvention::one_is_occupied ? "one_is_occupied" : "zero_is_occupied";
}

OccupationConvention parse_occupation_convention(std::string_view name) {
  if (name == "one_is_occupied") return OccupationConvention::one_is_occupied;
  if (name == "zero_is_occupied") return OccupationConvention::zero_is_occupied;
  throw InputError("unknown occupation convention '" + std::string(name) + "'");
}

int QubitLayout::count_alpha(std::uint64_t index) const noexcept {
  const int ones = popcount(index & low_mask(n_spatial));
  return convention == OccupationConvention::one_is_occupied ? ones : n_spatial - ones;
}

int QubitLayout::count_beta(std::uint64_t index) const noexcept {
  const int ones = popcount((index >> n_spatial) & low_mask(n_spatial));
  return convention == OccupationConvention::one_is_occupied ? ones : n_spatial - ones;
}

PauliSum jw_hamiltonian(const Eigen::MatrixXd& h, const EriTensor& g, double e_core,
                        const QubitLayout& layout) {
  const int n = layout.n_spatial;
  if (h.rows() != n || h.cols() != n) throw std::invalid_argument("jw_hamiltonian: h_act does not match layout");
  if (g.dim() != n) throw std::invalid_argument("jw_hamiltonian: g_act does not match layout");
  if (n > 16) throw std::invalid_argument("jw_hamiltonian: at most 16 spatial orbitals");
  const int m = layout.n_qubits();

  std::vector<ComplexSum> create(m), annihilate(m);
  for (int j = 0; j < m; ++j) {
    create[j] = ladder(j, true);
    annihilate[j] = ladder(j, false);
  }

  ComplexSum total;
  total[PauliWord{}] += e_core;
  const Spin spins[2] = {Spin::alpha, Spin::beta};

  for (Spin s : spins)
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        if (h(p, q) == 0.0) continue;
        accumulate(total, product(create[layout.qubit(p, s)], annihilate[layout.qubit(q, s)]), h(p, q));
      }

  // 1/2 sum (pq|rs) a+_{p s} a+_{r t} a_{s' t} a_{q s}
  for (Spin s1 : spins)
    for (Spin s2 : spins)
      for (int p = 0; p < n; ++p)
        for (int r = 0; r < n; ++r) {
          const int qp = layout.qubit(p, s1);
          const int qr = layout.qubit(r, s2);
          if (qp == qr) continue;
          const ComplexSum left = product(create[qp], create[qr]);
          for (int q = 0; q < n; ++q)
            for (int t = 0; t < n; ++t) {
              const double v = g(p, q, r, t);
              if (v == 0.0) continue;
              const int qt = layout.qubit(t, s2);
              const int qq = layout.qubit(q, s1);
              if (qt == qq) continue;
              accumulate(total, product(left, product(annihilate[qt], annihilate[qq])), 0.5 * v);
            }
        }

  std::vector<PauliTerm> terms;
  for (const auto& [w, c] : total) {
    if (std::abs(c.imag()) > 1e-10)
      throw std::logic_error("jw_hamiltonian: non-Hermitian term " + to_string(w, m));
    if (std::abs(c.real()) < 1e-14) continue;
    double coeff = c.real();
    if (layout.convention == OccupationConvention::zero_is_occupied && (popcount(w.z) & 1)) coeff = -coeff;
    terms.push_back({coeff, w});
  }
  return PauliSum::from_terms(m, std::move(terms));
}

std::pair<PauliSum, PauliSum> number_operators(const QubitLayout& layout) {
  const int n = layout.n_spatial;
  const double zsign = layout.convention == OccupationConvention::one_is_occupied ? -0.5 : 0.5;
  std::vector<PauliTerm> alpha{{0.5 * n, PauliWord{}}}, beta{{0.5 * n, PauliWord{}}};
  for (int v = 0; v < n; ++v) {
    alpha.push_back({zsign, PauliWord{0, 1ULL << layout.qubit(v, Spin::alpha)}});
    beta.push_back({zsign, PauliWord{0, 1ULL << layout.qubit(v, Spin::beta)}});
  }
  return {PauliSum::from_terms(layout.n_qubits(), std::move(alpha)),
          PauliSum::from_terms(layout.n_qubits(), std::move(beta))};
}

std::uint64_t hartree_fock_state(const QubitLayout& layout, int n_alpha, int n_beta) {
  if (n_alpha < 0 || n_beta < 0 || n_alpha > layout.n_spatial || n_beta > layout.n_spatial)
    throw std::invalid_argument("hartree_fock_state: electron count exceeds orbitals");
  std::uint64_t occ = 0;
  for (int v = 0; v < n_alpha; ++v) occ |= 1ULL << layout.qubit(v, Spin::alpha);
  for (int v = 0; v < n_beta; ++v) occ |= 1ULL << layout.qubit(v, Spin::beta);
  if (layout.convention == OccupationConvention::zero_is_occupied) occ = ~occ & low_mask(layout.n_qubits());
  return occ;
}

}  // namespace espnor
