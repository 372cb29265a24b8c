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

#ifndef ESPNOR_INSTANCE_HPP
#define ESPNOR_INSTANCE_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace espnor {

/// Two-electron integrals (pq|rs) in chemists' notation with full 8-fold
/// permutational symmetry. Stored densely; n is at most a few tens.
class EriTensor {
 public:
  struct Entry {
    int p, q, r, s;
    double value;
  };

  EriTensor() = default;
  explicit EriTensor(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}

  int dim() const noexcept { return n_; }

  double operator()(int p, int q, int r, int s) const { return data_[index(p, q, r, s)]; }

  /// Writes `value` into all eight symmetry-equivalent slots.
  void set_symmetric(int p, int q, int r, int s, double value);

  /// Canonical entries (p>=q, r>=s, pq>=rs) with nonzero value, in index order.
  std::vector<Entry> canonical_entries() const;

  /// Largest deviation between any two symmetry-equivalent slots.
  double symmetry_residual() const;

  bool operator==(const EriTensor& other) const = default;

 private:
  std::size_t index(int p, int q, int r, int s) const {
    return ((static_cast<std::size_t>(p) * n_ + q) * n_ + r) * n_ + s;
  }
  friend EriTensor eri_from_entries(int, const std::vector<Entry>&, const std::string&);

  int n_ = 0;
  std::vector<double> data_;
};

/// Builds a tensor from listed entries, filling every symmetric partner.
/// Conflicting values for symmetry-equivalent indices raise ValidationError
/// naming `field`.
EriTensor eri_from_entries(int n, const std::vector<EriTensor::Entry>& entries,
                           const std::string& field);

/// Core/active partition of the molecular orbitals of monomer A.
struct ActiveSpaceSpec {
  std::vector<int> core_mo;
  std::vector<int> active_mo;
  int n_alpha = 0;
  int n_beta = 0;

  int n_active() const noexcept { return static_cast<int>(active_mo.size()); }
  bool operator==(const ActiveSpaceSpec&) const = default;
};

/// Everything the classical preprocessing hands to the quantum pipeline.
///
/// The active integrals `h_act`/`g_act` are expected to already contain the
/// frozen-core contributions, with the matching constant in `E_core`; the
/// loader does not fold anything itself.
struct ProblemInstance {
  int n_ao = 0;
  int n_mo = 0;
  Eigen::MatrixXd C;           // n_ao x n_mo MO coefficients
  Eigen::MatrixXd S;           // AO overlap
  EriTensor eri_ao;            // (pp'|qq')
  Eigen::MatrixXd V_A_ao;      // nuclear attraction of monomer A nuclei
  Eigen::MatrixXd V_B_ao;      // nuclear attraction of monomer B nuclei
  Eigen::MatrixXd gamma_B_ao;  // spin-summed 1-PDM of monomer B
  double V_AB = 0.0;
  int N_A = 0;
  int N_B = 0;
  ActiveSpaceSpec active;
  Eigen::MatrixXd h_act;
  EriTensor g_act;
  double E_core = 0.0;

  int n_act() const noexcept { return active.n_active(); }

  bool operator==(const ProblemInstance& other) const;
};

inline constexpr const char* kInstanceFormat = "espnor-instance-v1";

/// Checks every instance invariant; throws ValidationError on the first
/// violated identity, ParseError on shape problems.
void validate(const ProblemInstance& instance);

ProblemInstance parse_instance(const std::string& text);
std::string serialize_instance(const ProblemInstance& instance);

ProblemInstance load_instance(const std::filesystem::path& path);
void save_instance(const ProblemInstance& instance, const std::filesystem::path& path);

/// Random but physically consistent instance: S positive definite, C the
/// closed-shell SCF orbitals of a model monomer A (hence S-orthonormal),
/// gamma_B an idempotent closed-shell density, ERIs positive semidefinite.
/// Requires 1 <= n_act <= n_ao <= 8. Deterministic in `seed`.
ProblemInstance generate_synthetic_instance(int n_ao, int n_act, std::uint64_t seed);

/// Short hex digest (FNV-1a over the canonical serialization) used to label reports.
std::string instance_digest(const ProblemInstance& instance);

}  // namespace espnor

#endif  // ESPNOR_INSTANCE_HPP
