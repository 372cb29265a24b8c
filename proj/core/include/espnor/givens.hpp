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

#ifndef ESPNOR_GIVENS_HPP
#define ESPNOR_GIVENS_HPP

#include <vector>

#include <Eigen/Dense>

namespace espnor {

/// Real orthogonal orbital rotation with det = +1.
class OrthogonalRotation {
 public:
  /// Validates orthogonality (1e-10) and det = +1.
  explicit OrthogonalRotation(Eigen::MatrixXd u);

  static OrthogonalRotation identity(int n) { return OrthogonalRotation(Eigen::MatrixXd::Identity(n, n)); }

  const Eigen::MatrixXd& matrix() const noexcept { return u_; }
  int dim() const noexcept { return static_cast<int>(u_.rows()); }

 private:
  Eigen::MatrixXd u_;
};

/// Planar rotation of orbitals (i, j) by `angle`, acting on those coordinates
/// as [[cos, -sin], [sin, cos]].
struct GivensRotation {
  int i = 0;
  int j = 1;
  double angle = 0.0;
};

/// Ordered Givens rotations. The represented matrix is the product of the
/// planar rotations in application order, R_1 R_2 ... R_m. As a circuit on a
/// spin block, the network maps the 1-PDM as gamma -> U^T gamma U.
struct GivensNetwork {
  int n = 0;
  std::vector<GivensRotation> rotations;

  GivensNetwork inverse() const;
};

Eigen::MatrixXd planar_rotation(int n, const GivensRotation& r);

/// Product of the network's planar rotations.
Eigen::MatrixXd to_matrix(const GivensNetwork& net);

/// Nearest-neighbour decomposition with at most n(n-1)/2 rotations such that
/// to_matrix(decompose(U)) = U.
GivensNetwork decompose(const OrthogonalRotation& u);

/// Network whose matrix equals to_matrix(first) * to_matrix(second), i.e.
/// `first` applied before `second`, re-expressed in canonical form.
GivensNetwork merge(const GivensNetwork& first, const GivensNetwork& second);

/// Negates the highest-index column when det = -1; throws on non-orthogonal input.
OrthogonalRotation fix_determinant(const Eigen::MatrixXd& u);

/// max |U^T U - I|.
double orthogonality_residual(const Eigen::MatrixXd& u);

}  // namespace espnor

#endif  // ESPNOR_GIVENS_HPP
