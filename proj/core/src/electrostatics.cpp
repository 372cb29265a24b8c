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

#include "espnor/electrostatics.hpp"

#include <cmath>
#include <stdexcept>

namespace espnor {

namespace {

double frob(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return (a.array() * b.array()).sum(); }

Eigen::MatrixXd active_block(const Eigen::MatrixXd& m, const std::vector<int>& idx) {
  const int n = static_cast<int>(idx.size());
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = m(idx[i], idx[j]);
  return out;
}

}  // namespace

EspMatrix build_esp_matrix(const ProblemInstance& in) {
  if (in.N_A <= 0 || in.N_B <= 0) throw std::invalid_argument("build_esp_matrix: N_A and N_B must be positive");
  const int n = in.n_ao;
  Eigen::MatrixXd coulomb = Eigen::MatrixXd::Zero(n, n);
  for (int p = 0; p < n; ++p)
    for (int pp = 0; pp < n; ++pp) {
      double acc = 0.0;
      for (int q = 0; q < n; ++q)
        for (int qq = 0; qq < n; ++qq) acc += in.eri_ao(p, pp, q, qq) * in.gamma_B_ao(q, qq);
      coulomb(p, pp) = acc;
    }
  const double gb_va = frob(in.gamma_B_ao, in.V_A_ao);
  const double gb_s = frob(in.gamma_B_ao, in.S);
  const double na = in.N_A, nb = in.N_B;
  EspMatrix esp;
  esp.J_ao = coulomb + (gb_va / na) * in.S + (gb_s / nb) * in.V_B_ao + (in.V_AB / (na * nb)) * gb_s * in.S;
  esp.J_mo = in.C.transpose() * esp.J_ao * in.C;
  return esp;
}

EspNaturalBasis esp_natural_basis(const Eigen::MatrixXd& J_mo, const ActiveSpaceSpec& active) {
  if (J_mo.rows() != J_mo.cols()) throw std::invalid_argument("esp_natural_basis: J_mo must be square");
  if (J_mo.size() > 0 && (J_mo - J_mo.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("esp_natural_basis: J_mo is not symmetric");
  for (int t : active.active_mo)
    if (t < 0 || t >= J_mo.rows()) throw std::invalid_argument("esp_natural_basis: active index out of range");
  const Eigen::MatrixXd j_act = active_block(J_mo, active.active_mo);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(j_act);
  if (eig.info() != Eigen::Success) throw std::runtime_error("esp_natural_basis: eigensolver failed");
  Eigen::MatrixXd u = eig.eigenvectors();
  for (Eigen::Index c = 0; c < u.cols(); ++c) {
    const double mx = u.col(c).cwiseAbs().maxCoeff();
    Eigen::Index pivot = 0;
    while (std::abs(u(pivot, c)) < mx - 1e-12) ++pivot;
    if (u(pivot, c) < 0) u.col(c) *= -1.0;
  }
  return EspNaturalBasis{fix_determinant(u), eig.eigenvalues(), j_act};
}

Eigen::VectorXd core_diagonal(const Eigen::MatrixXd& J_mo, const ActiveSpaceSpec& active) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(active.core_mo.size()));
  for (std::size_t i = 0; i < active.core_mo.size(); ++i)
    d(static_cast<Eigen::Index>(i)) = J_mo(active.core_mo[i], active.core_mo[i]);
  return d;
}

ElectrostaticsResult electrostatics_from_diag_rdm(const Eigen::VectorXd& w, const Eigen::VectorXd& gamma_diag,
                                                  const Eigen::VectorXd& core_J_diag) {
  if (w.size() != gamma_diag.size()) throw std::invalid_argument("electrostatics_from_diag_rdm: size mismatch");
  constexpr double eps = 1e-6;
  for (Eigen::Index v = 0; v < gamma_diag.size(); ++v)
    if (!(gamma_diag(v) >= -eps && gamma_diag(v) <= 2 + eps))
      throw std::invalid_argument("electrostatics_from_diag_rdm: occupation " + std::to_string(gamma_diag(v)) +
                                  " outside [0, 2]");
  ElectrostaticsResult r;
  r.route = "diagonal";
  r.core_term = 2.0 * core_J_diag.sum();
  r.active_term = w.dot(gamma_diag);
  r.e_elst = r.core_term + r.active_term;
  return r;
}

ElectrostaticsResult electrostatics_direct_ao(const ProblemInstance& in, const Eigen::MatrixXd& g) {
  if (g.rows() != in.n_ao || g.cols() != in.n_ao)
    throw std::invalid_argument("electrostatics_direct_ao: gamma_A has the wrong shape");
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("electrostatics_direct_ao: gamma_A is not symmetric");
  const double count = frob(in.S, g);
  if (std::abs(count - in.N_A) > 1e-6)
    throw std::invalid_argument("electrostatics_direct_ao: sum S gamma_A = " + std::to_string(count) +
                                " differs from N_A = " + std::to_string(in.N_A));
  const int n = in.n_ao;
  double coulomb = 0.0;
  for (int p = 0; p < n; ++p)
    for (int pp = 0; pp < n; ++pp) {
      if (g(p, pp) == 0.0) continue;
      double acc = 0.0;
      for (int q = 0; q < n; ++q)
        for (int qq = 0; qq < n; ++qq) acc += in.eri_ao(p, pp, q, qq) * in.gamma_B_ao(q, qq);
      coulomb += g(p, pp) * acc;
    }
  ElectrostaticsResult r;
  r.route = "ao_direct";
  r.terms["coulomb"] = coulomb;
  r.terms["gammaA_VB"] = frob(g, in.V_B_ao);
  r.terms["VA_gammaB"] = frob(in.V_A_ao, in.gamma_B_ao);
  r.terms["V_AB"] = in.V_AB;
  r.e_elst = coulomb + r.terms["gammaA_VB"] + r.terms["VA_gammaB"] + in.V_AB;
  // Core share via the equivalent J contraction of the doubly occupied core.
  const EspMatrix esp = build_esp_matrix(in);
  r.core_term = 2.0 * core_diagonal(esp.J_mo, in.active).sum();
  r.active_term = r.e_elst - r.core_term;
  return r;
}

ElectrostaticsResult electrostatics_mo_contraction(const EspMatrix& esp, const ActiveSpaceSpec& active,
                                                   const Eigen::MatrixXd& gamma_mo) {
  if (gamma_mo.rows() != esp.J_mo.rows() || gamma_mo.cols() != esp.J_mo.cols())
    throw std::invalid_argument("electrostatics_mo_contraction: gamma_A has the wrong shape");
  ElectrostaticsResult r;
  r.route = "mo_contraction";
  r.e_elst = frob(esp.J_mo, gamma_mo);
  double core = 0.0;
  for (int a : active.core_mo)
    for (int b : active.core_mo) core += esp.J_mo(a, b) * gamma_mo(a, b);
  r.core_term = core;
  r.active_term = r.e_elst - core;
  return r;
}

Eigen::MatrixXd promote_to_mo(const ProblemInstance& in, const Eigen::MatrixXd& gamma_act) {
  const int na = in.n_act();
  if (gamma_act.rows() != na || gamma_act.cols() != na)
    throw std::invalid_argument("promote_to_mo: active 1-PDM has the wrong shape");
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(in.n_mo, in.n_mo);
  for (int t : in.active.core_mo) g(t, t) = 2.0;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) g(in.active.active_mo[i], in.active.active_mo[j]) = gamma_act(i, j);
  return g;
}

Eigen::MatrixXd mo_to_ao(const ProblemInstance& in, const Eigen::MatrixXd& gamma_mo) {
  return in.C * gamma_mo * in.C.transpose();
}

EnergyEstimate one_body_diag_energy(const Eigen::MatrixXd& h_act, const OrthogonalRotation& U,
                                    const Eigen::VectorXd& gamma_diag) {
  if (h_act.rows() != U.dim() || h_act.cols() != U.dim() || gamma_diag.size() != U.dim())
    throw std::invalid_argument("one_body_diag_energy: dimension mismatch");
  const Eigen::MatrixXd hbar = U.matrix().transpose() * h_act * U.matrix();
  EnergyEstimate e;
  e.mean = hbar.diagonal().dot(gamma_diag);
  e.min_sample = e.max_sample = e.mean;
  return e;
}

}  // namespace espnor
