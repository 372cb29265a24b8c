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

#include "espnor/ansatz.hpp"

#include <stdexcept>
#include <string>

#include "espnor/bitstring.hpp"

namespace espnor {

namespace {

double angle_sign(const QubitLayout& layout) {
  return layout.convention == OccupationConvention::zero_is_occupied ? -1.0 : 1.0;
}

void append_network(Circuit& c, const QubitLayout& layout, const GivensNetwork& net, Spin spin) {
  const double sign = angle_sign(layout);
  for (const auto& r : net.rotations)
    c.add(Gate::g(layout.qubit(r.i, spin), layout.qubit(r.j, spin), sign * 2.0 * r.angle));
}

void append_px_layer(Circuit& c, const QnpAnsatz& a, std::span<const double> theta) {
  const double sign = angle_sign(a.layout);
  for (std::size_t k = 0; k < a.px_pairs.size(); ++k) {
    const auto [p, q] = a.px_pairs[k];
    c.add(Gate::px(a.layout.qubit(p, Spin::alpha), a.layout.qubit(p, Spin::beta), a.layout.qubit(q, Spin::alpha),
                   a.layout.qubit(q, Spin::beta), sign * theta[k]));
  }
}

void check_theta(const QnpAnsatz& a, std::span<const double> theta) {
  if (theta.size() != a.n_parameters())
    throw std::invalid_argument("ansatz expects " + std::to_string(a.n_parameters()) + " parameters, got " +
                                std::to_string(theta.size()));
}

}  // namespace

QnpAnsatz build_ansatz(const QubitLayout& layout, int n_alpha, int n_beta) {
  const int n = layout.n_spatial;
  if (n_alpha != n_beta) throw InputError("open-shell ansatz (n_alpha != n_beta) is not supported");
  if (n_alpha < 0 || n_alpha > n) throw InputError("electron count exceeds orbital count");
  QnpAnsatz a{layout, n_alpha, n_beta, {}, {}};
  const int k = n_alpha;
  if (k == 0 || k == n) return a;
  std::vector<std::pair<int, int>> ladder{{k - 1, k}};
  int lo = k - 1, hi = k;
  while (lo > 0 || hi < n - 1) {
    if (lo > 0) {
      ladder.emplace_back(lo - 1, lo);
      --lo;
    }
    if (hi < n - 1) {
      ladder.emplace_back(hi, hi + 1);
      ++hi;
    }
  }
  a.px_pairs = ladder;
  a.g_pairs = ladder;
  return a;
}

Circuit reference_circuit(const QubitLayout& layout, int n_alpha, int n_beta) {
  Circuit c(layout.n_qubits());
  const std::uint64_t hf = hartree_fock_state(layout, n_alpha, n_beta);
  for (int q = 0; q < layout.n_qubits(); ++q)
    if ((hf >> q) & 1ULL) c.add(Gate::x(q));
  return c;
}

GivensNetwork ladder_network(const QnpAnsatz& a, std::span<const double> theta, Spin spin) {
  check_theta(a, theta);
  const std::size_t offset = a.px_pairs.size() + (spin == Spin::beta ? a.g_pairs.size() : 0);
  GivensNetwork net{a.layout.n_spatial, {}};
  for (std::size_t k = 0; k < a.g_pairs.size(); ++k)
    net.rotations.push_back({a.g_pairs[k].first, a.g_pairs[k].second, theta[offset + k] / 2.0});
  return net;
}

Circuit ansatz_circuit(const QnpAnsatz& a, std::span<const double> theta) {
  check_theta(a, theta);
  Circuit c = reference_circuit(a.layout, a.n_alpha, a.n_beta);
  append_px_layer(c, a, theta);
  append_network(c, a.layout, ladder_network(a, theta, Spin::alpha), Spin::alpha);
  append_network(c, a.layout, ladder_network(a, theta, Spin::beta), Spin::beta);
  return c;
}

StateVector prepare(const QnpAnsatz& a, std::span<const double> theta) {
  return apply_circuit(ansatz_circuit(a, theta), StateVector(a.layout.n_qubits()));
}

Circuit rotation_circuit(const QubitLayout& layout, const GivensNetwork& net) {
  if (net.n != layout.n_spatial) throw std::invalid_argument("rotation_circuit: network dimension mismatch");
  Circuit c(layout.n_qubits());
  append_network(c, layout, net, Spin::alpha);
  append_network(c, layout, net, Spin::beta);
  return c;
}

Circuit merge_measurement_rotation(const QnpAnsatz& a, std::span<const double> theta, const OrthogonalRotation& u) {
  check_theta(a, theta);
  if (u.dim() != a.layout.n_spatial) throw std::invalid_argument("merge_measurement_rotation: dimension mismatch");
  const GivensNetwork u_net = decompose(u);
  Circuit c = reference_circuit(a.layout, a.n_alpha, a.n_beta);
  append_px_layer(c, a, theta);
  append_network(c, a.layout, merge(ladder_network(a, theta, Spin::alpha), u_net), Spin::alpha);
  append_network(c, a.layout, merge(ladder_network(a, theta, Spin::beta), u_net), Spin::beta);
  return c;
}

Eigen::MatrixXd one_rdm(const StateVector& state, const QubitLayout& layout) {
  const int n = layout.n_spatial;
  if (state.n_qubits() != layout.n_qubits()) throw std::invalid_argument("one_rdm: qubit count mismatch");
  // Work in occupation bits; under zero_is_occupied the basis label is complemented.
  const std::uint64_t flip =
      layout.convention == OccupationConvention::zero_is_occupied ? low_mask(layout.n_qubits()) : 0;
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(n, n);
  for (std::uint64_t idx = 0; idx < state.dim(); ++idx) {
    const cplx amp = state[idx];
    if (amp == cplx{}) continue;
    const std::uint64_t occ = idx ^ flip;
    for (Spin s : {Spin::alpha, Spin::beta})
      for (int q = 0; q < n; ++q) {
        const int mq = layout.qubit(q, s);
        if (!((occ >> mq) & 1ULL)) continue;
        const std::uint64_t removed = occ & ~(1ULL << mq);
        const int sign_q = popcount(occ & low_mask(mq)) % 2 ? -1 : 1;
        for (int p = 0; p < n; ++p) {
          const int mp = layout.qubit(p, s);
          if ((removed >> mp) & 1ULL) continue;
          const int sign_p = popcount(removed & low_mask(mp)) % 2 ? -1 : 1;
          const std::uint64_t target = (removed | (1ULL << mp)) ^ flip;
          // <psi| a+_p a_q |psi> picks up conj(psi[target]) * psi[idx].
          gamma(p, q) += sign_p * sign_q * (std::conj(state[target]) * amp).real();
        }
      }
  }
  return gamma;
}

double sector_leakage(const StateVector& state, const QubitLayout& layout, int n_alpha, int n_beta) {
  double leak = 0.0;
  for (std::uint64_t idx = 0; idx < state.dim(); ++idx)
    if (layout.count_alpha(idx) != n_alpha || layout.count_beta(idx) != n_beta) leak += std::norm(state[idx]);
  return leak;
}

}  // namespace espnor
