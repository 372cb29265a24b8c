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

#include "espnor/fci.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "espnor/bitstring.hpp"

namespace espnor {

SectorBasis::SectorBasis(int n_spatial, int n_alpha, int n_beta) : n_(n_spatial), na_(n_alpha), nb_(n_beta) {
  if (n_spatial < 0 || n_spatial > 16) throw std::invalid_argument("SectorBasis: unsupported orbital count");
  if (n_alpha < 0 || n_beta < 0 || n_alpha > n_spatial || n_beta > n_spatial)
    throw std::invalid_argument("SectorBasis: electron count exceeds orbital count");
  const std::uint64_t block = low_mask(n_spatial);
  for (std::uint64_t a = 0; a <= block; ++a) {
    if (popcount(a) != n_alpha) continue;
    for (std::uint64_t b = 0; b <= block; ++b)
      if (popcount(b) == n_beta) dets_.push_back(a | (b << n_spatial));
  }
  const int width = 2 * n_spatial;
  std::sort(dets_.begin(), dets_.end(),
            [width](std::uint64_t x, std::uint64_t y) { return to_bitstring(x, width) < to_bitstring(y, width); });
  for (std::size_t i = 0; i < dets_.size(); ++i) index_[dets_[i]] = i;
}

long SectorBasis::index_of(std::uint64_t det) const {
  auto it = index_.find(det);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

namespace {

// a_k / a+_k on an occupation mask; returns false if the result vanishes.
bool annihilate(std::uint64_t& det, int k, int& sign) {
  if (!((det >> k) & 1ULL)) return false;
  if (popcount(det & low_mask(k)) % 2) sign = -sign;
  det &= ~(1ULL << k);
  return true;
}

bool create(std::uint64_t& det, int k, int& sign) {
  if ((det >> k) & 1ULL) return false;
  if (popcount(det & low_mask(k)) % 2) sign = -sign;
  det |= 1ULL << k;
  return true;
}

}  // namespace

Eigen::MatrixXd sector_hamiltonian(const Eigen::MatrixXd& h, const EriTensor& g, double e_core,
                                   const SectorBasis& basis) {
  const int n = basis.n_spatial();
  if (h.rows() != n || h.cols() != n || g.dim() != n)
    throw std::invalid_argument("sector_hamiltonian: integral dimensions do not match the basis");
  const std::size_t dim = basis.size();
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(dim, dim) * e_core;
  for (std::size_t col = 0; col < dim; ++col) {
    const std::uint64_t ket = basis.determinant(col);
    for (int s = 0; s < 2; ++s)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          if (h(p, q) == 0.0) continue;
          std::uint64_t d = ket;
          int sign = 1;
          if (!annihilate(d, q + s * n, sign) || !create(d, p + s * n, sign)) continue;
          H(basis.index_of(d), col) += sign * h(p, q);
        }
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t)
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q)
            for (int r = 0; r < n; ++r)
              for (int u = 0; u < n; ++u) {
                const double v = g(p, q, r, u);
                if (v == 0.0) continue;
                // a+_{p s} a+_{r t} a_{u t} a_{q s}, rightmost first.
                std::uint64_t d = ket;
                int sign = 1;
                if (!annihilate(d, q + s * n, sign) || !annihilate(d, u + t * n, sign) ||
                    !create(d, r + t * n, sign) || !create(d, p + s * n, sign))
                  continue;
                H(basis.index_of(d), col) += 0.5 * sign * v;
              }
  }
  return H;
}

Eigen::MatrixXd sector_one_rdm(const SectorBasis& basis, const Eigen::VectorXd& v) {
  const int n = basis.n_spatial();
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t col = 0; col < basis.size(); ++col) {
    if (v(col) == 0.0) continue;
    for (int s = 0; s < 2; ++s)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          std::uint64_t d = basis.determinant(col);
          int sign = 1;
          if (!annihilate(d, q + s * n, sign) || !create(d, p + s * n, sign)) continue;
          gamma(p, q) += sign * v(basis.index_of(d)) * v(col);
        }
  }
  return gamma;
}

ExactSolution exact_ground_state(const Eigen::MatrixXd& h_act, const EriTensor& g_act, double e_core, int n_alpha,
                                 int n_beta) {
  const int n = static_cast<int>(h_act.rows());
  if (n > 6) throw std::invalid_argument("exact_ground_state: dense sector solver supports N <= 6");
  SectorBasis basis(n, n_alpha, n_beta);
  if (basis.size() == 0) throw std::invalid_argument("exact_ground_state: empty sector");
  const Eigen::MatrixXd H = sector_hamiltonian(h_act, g_act, e_core, basis);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(H);
  if (eig.info() != Eigen::Success) throw std::runtime_error("exact_ground_state: eigensolver failed");
  Eigen::VectorXd v = eig.eigenvectors().col(0);
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > 1e-8) {
      if (v(i) < 0) v = -v;
      break;
    }
  ExactSolution sol{eig.eigenvalues()(0), v, sector_one_rdm(basis, v), 0.0, basis};
  sol.residual = (H * v - sol.E0 * v).norm();
  return sol;
}

ExactElectrostatics exact_electrostatics(const ProblemInstance& in) {
  ExactElectrostatics out{exact_ground_state(in.h_act, in.g_act, in.E_core, in.active.n_alpha, in.active.n_beta),
                          {}, {}, {}, {}, 0.0};
  const EspMatrix esp = build_esp_matrix(in);
  const Eigen::MatrixXd gamma_mo = promote_to_mo(in, out.solution.gamma);
  out.ao_direct = electrostatics_direct_ao(in, mo_to_ao(in, gamma_mo));
  out.mo_contraction = electrostatics_mo_contraction(esp, in.active, gamma_mo);
  const EspNaturalBasis nb = esp_natural_basis(esp.J_mo, in.active);
  out.gamma_bar_diag = (nb.U.matrix().transpose() * out.solution.gamma * nb.U.matrix()).diagonal();
  out.diagonal = electrostatics_from_diag_rdm(nb.w, out.gamma_bar_diag, core_diagonal(esp.J_mo, in.active));
  out.route_discrepancy = std::max(std::abs(out.ao_direct.e_elst - out.diagonal.e_elst),
                                   std::abs(out.mo_contraction.e_elst - out.diagonal.e_elst));
  if (out.route_discrepancy > 1e-9)
    throw std::runtime_error("exact_electrostatics: routes disagree by " + std::to_string(out.route_discrepancy));
  return out;
}

double supermolecular_interaction(const ProblemInstance& ab, const ProblemInstance& a, const ProblemInstance& b) {
  if (ab.active.n_alpha != a.active.n_alpha + b.active.n_alpha ||
      ab.active.n_beta != a.active.n_beta + b.active.n_beta)
    throw std::invalid_argument("supermolecular_interaction: dimer sector is not the sum of the monomer sectors");
  auto energy = [](const ProblemInstance& x) {
    return exact_ground_state(x.h_act, x.g_act, x.E_core, x.active.n_alpha, x.active.n_beta).E0;
  };
  return energy(ab) - energy(a) - energy(b);
}

}  // namespace espnor
