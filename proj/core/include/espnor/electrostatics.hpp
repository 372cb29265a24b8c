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

#ifndef ESPNOR_ELECTROSTATICS_HPP
#define ESPNOR_ELECTROSTATICS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "espnor/common.hpp"
#include "espnor/givens.hpp"
#include "espnor/instance.hpp"

namespace espnor {

/// Mean and standard error of a sampled energy (Hartree).
struct EnergyEstimate {
  double mean = 0.0;
  double sem = 0.0;
  std::uint64_t n_samples_used = 0;
  std::uint64_t total_shots = 0;
  /// Fewer than two samples: sem is reported as 0 and must not be trusted.
  bool insufficient_statistics = false;
  double min_sample = 0.0;
  double max_sample = 0.0;
};

/// Generalized electrostatic potential of monomer B in the AO and MO bases.
struct EspMatrix {
  Eigen::MatrixXd J_ao;
  Eigen::MatrixXd J_mo;
};

EspMatrix build_esp_matrix(const ProblemInstance& instance);

/// Eigenbasis of the active block of J_mo: U^T J_act U = diag(w), w ascending.
/// Each eigenvector has its largest-magnitude entry positive, then the last
/// column is flipped if needed so det(U) = +1.
struct EspNaturalBasis {
  OrthogonalRotation U;
  Eigen::VectorXd w;
  Eigen::MatrixXd J_act;
};

EspNaturalBasis esp_natural_basis(const Eigen::MatrixXd& J_mo, const ActiveSpaceSpec& active);

struct ElectrostaticsResult {
  std::string route;
  double e_elst = 0.0;  // Hartree
  double core_term = 0.0;
  double active_term = 0.0;
  /// Route-specific breakdown (e.g. the four AO-direct terms).
  std::map<std::string, double> terms;
  std::optional<EnergyEstimate> estimate;

  double e_elst_kcal() const noexcept { return e_elst * kHartreeToKcalMol; }
};

/// (J_mo)_tt over the core orbitals.
Eigen::VectorXd core_diagonal(const Eigen::MatrixXd& J_mo, const ActiveSpaceSpec& active);

/// E = 2 sum_core J_tt + sum_v w_v gamma_vv. Occupations must lie in
/// [-1e-6, 2 + 1e-6].
ElectrostaticsResult electrostatics_from_diag_rdm(const Eigen::VectorXd& w, const Eigen::VectorXd& gamma_diag,
                                                  const Eigen::VectorXd& core_J_diag);

/// Four-term AO sum: Coulomb, gamma_A.V_B, V_A.gamma_B and V_AB.
ElectrostaticsResult electrostatics_direct_ao(const ProblemInstance& instance, const Eigen::MatrixXd& gamma_A_ao);

/// sum_tt' J_tt' gamma_tt' over all MOs.
ElectrostaticsResult electrostatics_mo_contraction(const EspMatrix& esp, const ActiveSpaceSpec& active,
                                                   const Eigen::MatrixXd& gamma_A_mo);

/// Full MO 1-PDM of monomer A: 2 on core diagonals, `gamma_act` on the active block.
Eigen::MatrixXd promote_to_mo(const ProblemInstance& instance, const Eigen::MatrixXd& gamma_act);

/// gamma_ao = C gamma_mo C^T.
Eigen::MatrixXd mo_to_ao(const ProblemInstance& instance, const Eigen::MatrixXd& gamma_mo);

/// Diagonal one-body proxy: h_bar = U^T h U, E = sum_v h_bar_vv gamma_vv.
EnergyEstimate one_body_diag_energy(const Eigen::MatrixXd& h_act, const OrthogonalRotation& U,
                                    const Eigen::VectorXd& gamma_diag);

}  // namespace espnor

#endif  // ESPNOR_ELECTROSTATICS_HPP
