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

#include "espnor/transpile.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace espnor {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleEps = 1e-13;

// Every emitter appends native gates whose product matches the named
// operation up to a global phase.
struct Emitter {
  Circuit& out;

  void rx(int q, double t) { out.add(Gate::rx(q, t)); }
  void rz(int q, double t) { out.add(Gate::rz(q, t)); }
  void rxx(int a, int b, double t) { out.add(Gate::rxx(a, b, t)); }

  void h(int q) {
    rz(q, kPi / 2);
    rx(q, kPi / 2);
    rz(q, kPi / 2);
  }

  // Ry(phi) = S RX(phi) S^dagger.
  void ry(int q, double phi) {
    rz(q, -kPi / 2);
    rx(q, phi);
    rz(q, kPi / 2);
  }

  // CNOT = exp(i pi/4 (1 - Z_c)(1 - X_t)); the ZX factor is an XX
  // interaction conjugated by H on the control.
  void cnot(int c, int t) {
    h(c);
    rxx(c, t, -kPi / 4);
    h(c);
    rz(c, kPi / 2);
    rx(t, kPi / 2);
  }

  // G(t) = exp(-i t/4 Y0 X1) exp(+i t/4 X0 Y1).
  void givens(int q0, int q1, double t) {
    rz(q1, -kPi / 2);
    rxx(q0, q1, -t / 4);
    rz(q1, kPi / 2);
    rz(q0, -kPi / 2);
    rxx(q0, q1, t / 4);
    rz(q0, kPi / 2);
  }

  // The permutation below sends |1100> -> |1111> and |0011> -> |0111> on
  // (a, b, c, d), so PX becomes Ry(-t) on `a` controlled by b = c = d = 1.
  // That controlled rotation is a Gray-code multiplexor of 8 Ry and 8 CNOT.
  void px(int a, int b, int c, int d, double t) {
    auto perm = [&] {
      cnot(c, d);
      cnot(a, b);
      cnot(a, c);
      rx(b, kPi);
      rx(d, kPi);
    };
    auto perm_inv = [&] {
      rx(d, kPi);
      rx(b, kPi);
      cnot(a, c);
      cnot(a, b);
      cnot(c, d);
    };
    const int controls[3] = {b, c, d};
    perm();
    for (int k = 0; k < 8; ++k) {
      const int set = k ^ (k >> 1);
      const int next = ((k + 1) % 8) ^ (((k + 1) % 8) >> 1);
      const double sign = (std::popcount(static_cast<unsigned>(set)) % 2 == 0) ? 1.0 : -1.0;
      ry(a, -t / 8 * sign);
      const int toggled = std::countr_zero(static_cast<unsigned>(set ^ next));
      cnot(controls[toggled], a);
    }
    perm_inv();
  }
};

double wrap(double angle, double period) {
  double r = std::remainder(angle, period);
  if (r <= -period / 2) r += period;
  return r;
}

bool touches(const Gate& g, int q) {
  for (int i = 0; i < g.arity(); ++i)
    if (g.q[i] == q) return true;
  return false;
}

bool same_pair(const Gate& a, const Gate& b) {
  return (a.q[0] == b.q[0] && a.q[1] == b.q[1]) || (a.q[0] == b.q[1] && a.q[1] == b.q[0]);
}

// Period after which a native rotation returns to +-identity.
double period(GateKind k) { return k == GateKind::RXX ? kPi : 2 * kPi; }

bool is_trivial(const Gate& g) { return std::abs(wrap(g.theta, period(g.kind))) < kAngleEps; }

}  // namespace

GateCounts count_gates(const Circuit& circuit) {
  GateCounts c;
  for (const Gate& g : circuit.gates) {
    switch (g.arity()) {
      case 1: ++c.single_qubit; break;
      case 2: ++c.two_qubit; break;
      default: ++c.multi_qubit; break;
    }
    ++c.by_kind[std::string(to_string(g.kind))];
  }
  return c;
}

Circuit compile_to_native(const Circuit& circuit) {
  circuit.validate();
  // Native input passes through untouched.
  if (circuit.is_native()) return circuit;
  Circuit out(circuit.n_qubits);
  Emitter e{out};
  for (const Gate& g : circuit.gates) {
    switch (g.kind) {
      case GateKind::RX:
      case GateKind::RZ:
      case GateKind::RXX: out.add(g); break;
      case GateKind::X: e.rx(g.q[0], kPi); break;
      case GateKind::MS: e.rxx(g.q[0], g.q[1], g.theta / 2); break;
      case GateKind::G: e.givens(g.q[0], g.q[1], g.theta); break;
      case GateKind::PX: e.px(g.q[0], g.q[1], g.q[2], g.q[3], g.theta); break;
      default: throw std::invalid_argument("compile_to_native: unsupported gate kind");
    }
  }
  return peephole(out);
}

Circuit peephole(const Circuit& native) {
  if (!native.is_native()) throw std::invalid_argument("peephole: circuit contains non-native gates");
  std::vector<Gate> cur = native.gates;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Gate> out;
    out.reserve(cur.size());
    for (const Gate& g : cur) {
      if (is_trivial(g)) {
        changed = true;
        continue;
      }
      // Latest earlier gate sharing an operand with g.
      std::ptrdiff_t j = static_cast<std::ptrdiff_t>(out.size()) - 1;
      for (; j >= 0; --j) {
        bool shares = false;
        for (int i = 0; i < g.arity(); ++i) shares = shares || touches(out[j], g.q[i]);
        if (shares) break;
      }
      const bool mergeable =
          j >= 0 && out[j].kind == g.kind &&
          (g.arity() == 1 ? out[j].q[0] == g.q[0] : same_pair(out[j], g));
      if (!mergeable) {
        out.push_back(g);
        continue;
      }
      changed = true;
      out[j].theta = wrap(out[j].theta + g.theta, period(g.kind));
      if (is_trivial(out[j])) out.erase(out.begin() + j);
    }
    cur = std::move(out);
  }
  Circuit result(native.n_qubits);
  result.gates = std::move(cur);
  return result;
}

}  // namespace espnor
