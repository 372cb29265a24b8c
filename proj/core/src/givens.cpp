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

#include "espnor/givens.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace espnor {

namespace {
constexpr double kOrthoTol = 1e-10;
}

double orthogonality_residual(const Eigen::MatrixXd& u) {
  if (u.rows() != u.cols()) return INFINITY;
  if (u.size() == 0) return 0.0;
  return (u.transpose() * u - Eigen::MatrixXd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

OrthogonalRotation::OrthogonalRotation(Eigen::MatrixXd u) : u_(std::move(u)) {
  const double r = orthogonality_residual(u_);
  if (!(r <= kOrthoTol))
    throw std::invalid_argument("OrthogonalRotation: matrix not orthogonal (residual " + std::to_string(r) + ")");
  if (u_.size() > 0 && u_.determinant() < 0)
    throw std::invalid_argument("OrthogonalRotation: det = -1; apply fix_determinant first");
}

GivensNetwork GivensNetwork::inverse() const {
  GivensNetwork inv{n, {}};
  for (auto it = rotations.rbegin(); it != rotations.rend(); ++it) inv.rotations.push_back({it->i, it->j, -it->angle});
  return inv;
}

Eigen::MatrixXd planar_rotation(int n, const GivensRotation& r) {
  if (r.i < 0 || r.j < 0 || r.i >= n || r.j >= n || r.i == r.j)
    throw std::invalid_argument("planar_rotation: invalid orbital indices");
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  const double c = std::cos(r.angle);
  const double s = std::sin(r.angle);
  m(r.i, r.i) = c;
  m(r.i, r.j) = -s;
  m(r.j, r.i) = s;
  m(r.j, r.j) = c;
  return m;
}

Eigen::MatrixXd to_matrix(const GivensNetwork& net) {
  Eigen::MatrixXd u = Eigen::MatrixXd::Identity(net.n, net.n);
  for (const auto& r : net.rotations) {
    if (r.i < 0 || r.j < 0 || r.i >= net.n || r.j >= net.n || r.i == r.j)
      throw std::invalid_argument("to_matrix: rotation indices out of range");
    // Right-multiplication touches only columns i and j.
    const double c = std::cos(r.angle);
    const double s = std::sin(r.angle);
    const Eigen::VectorXd ci = u.col(r.i);
    const Eigen::VectorXd cj = u.col(r.j);
    u.col(r.i) = c * ci + s * cj;
    u.col(r.j) = -s * ci + c * cj;
  }
  return u;
}

GivensNetwork decompose(const OrthogonalRotation& rotation) {
  // Left-multiply by transposed planar rotations on adjacent rows until the
  // matrix is the identity; the rotations then compose to U in order.
  const int n = rotation.dim();
  Eigen::MatrixXd w = rotation.matrix();
  GivensNetwork net{n, {}};
  for (int col = 0; col + 1 < n; ++col) {
    for (int row = n - 1; row > col; --row) {
      const double a = w(row - 1, col);
      const double b = w(row, col);
      const double angle = std::atan2(b, a);
      const double c = std::cos(angle);
      const double s = std::sin(angle);
      const Eigen::RowVectorXd top = w.row(row - 1);
      const Eigen::RowVectorXd bottom = w.row(row);
      w.row(row - 1) = c * top + s * bottom;
      w.row(row) = -s * top + c * bottom;
      net.rotations.push_back({row - 1, row, angle});
    }
  }
  return net;
}

GivensNetwork merge(const GivensNetwork& first, const GivensNetwork& second) {
  if (first.n != second.n) throw std::invalid_argument("merge: networks act on different orbital counts");
  Eigen::MatrixXd product = to_matrix(first) * to_matrix(second);
  // Re-orthonormalize away accumulated rounding before the strict check.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(product, Eigen::ComputeFullU | Eigen::ComputeFullV);
  product = svd.matrixU() * svd.matrixV().transpose();
  return decompose(OrthogonalRotation(product));
}

OrthogonalRotation fix_determinant(const Eigen::MatrixXd& u) {
  const double r = orthogonality_residual(u);
  if (!(r <= kOrthoTol))
    throw std::invalid_argument("fix_determinant: matrix not orthogonal (residual " + std::to_string(r) + ")");
  Eigen::MatrixXd out = u;
  if (out.size() > 0 && out.determinant() < 0) out.col(out.cols() - 1) *= -1.0;
  return OrthogonalRotation(std::move(out));
}

}  // namespace espnor
