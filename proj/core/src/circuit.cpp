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

#include "espnor/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "espnor/common.hpp"

namespace espnor {

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::RX: return "RX";
    case GateKind::RZ: return "RZ";
    case GateKind::RXX: return "RXX";
    case GateKind::X: return "X";
    case GateKind::G: return "G";
    case GateKind::PX: return "PX";
    case GateKind::MS: return "MS";
  }
  return "?";
}

GateKind parse_gate_kind(std::string_view name) {
  for (GateKind k : {GateKind::RX, GateKind::RZ, GateKind::RXX, GateKind::X, GateKind::G, GateKind::PX,
                     GateKind::MS})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown gate kind '" + std::string(name) + "'");
}

int arity(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::RX:
    case GateKind::RZ:
    case GateKind::X: return 1;
    case GateKind::RXX:
    case GateKind::G:
    case GateKind::MS: return 2;
    case GateKind::PX: return 4;
  }
  return 0;
}

bool has_angle(GateKind kind) noexcept { return kind != GateKind::X; }

bool is_native(GateKind kind) noexcept {
  return kind == GateKind::RX || kind == GateKind::RZ || kind == GateKind::RXX;
}

Gate inverse(const Gate& g) {
  Gate out = g;
  if (has_angle(g.kind)) out.theta = -g.theta;
  return out;
}

Gate conjugate(const Gate& g) {
  // G and PX are real; the rest are exp(-i t P) with P real, so conj flips t.
  if (g.kind == GateKind::G || g.kind == GateKind::PX || g.kind == GateKind::X) return g;
  return inverse(g);
}

Eigen::MatrixXcd gate_matrix(const Gate& g) {
  const double t = g.theta;
  const cplx I(0.0, 1.0);
  switch (g.kind) {
    case GateKind::RX: {
      Eigen::Matrix2cd m;
      m << std::cos(t / 2), -I * std::sin(t / 2), -I * std::sin(t / 2), std::cos(t / 2);
      return m;
    }
    case GateKind::RZ: {
      Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
      m(0, 0) = std::exp(-I * (t / 2));
      m(1, 1) = std::exp(I * (t / 2));
      return m;
    }
    case GateKind::X: {
      Eigen::Matrix2cd m;
      m << 0, 1, 1, 0;
      return m;
    }
    case GateKind::RXX:
    case GateKind::MS: {
      const double a = g.kind == GateKind::RXX ? t : t / 2;
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity() * std::cos(a);
      for (int k = 0; k < 4; ++k) m(3 - k, k) = -I * std::sin(a);
      return m;
    }
    case GateKind::G: {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
      const double c = std::cos(t / 2), s = std::sin(t / 2);
      m(1, 1) = c;
      m(1, 2) = -s;
      m(2, 1) = s;
      m(2, 2) = c;
      return m;
    }
    case GateKind::PX: {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(16, 16);
      const double c = std::cos(t / 2), s = std::sin(t / 2);
      constexpr int k1100 = 0b1100, k0011 = 0b0011;
      m(k1100, k1100) = c;
      m(k1100, k0011) = -s;
      m(k0011, k1100) = s;
      m(k0011, k0011) = c;
      return m;
    }
  }
  throw std::invalid_argument("gate_matrix: unsupported gate kind");
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.n_qubits != n_qubits) throw std::invalid_argument("Circuit::append: qubit count mismatch");
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
  return *this;
}

void Circuit::validate() const {
  if (n_qubits < 0 || n_qubits > 30) throw std::invalid_argument("circuit: unsupported qubit count");
  for (std::size_t k = 0; k < gates.size(); ++k) {
    const Gate& g = gates[k];
    const int a = g.arity();
    for (int i = 0; i < a; ++i) {
      if (g.q[i] < 0 || g.q[i] >= n_qubits)
        throw std::invalid_argument("circuit gate " + std::to_string(k) + ": qubit index out of range");
      for (int j = 0; j < i; ++j)
        if (g.q[i] == g.q[j])
          throw std::invalid_argument("circuit gate " + std::to_string(k) + ": repeated qubit operand");
    }
    if (!std::isfinite(g.theta))
      throw std::invalid_argument("circuit gate " + std::to_string(k) + ": non-finite angle");
  }
}

bool Circuit::is_native() const noexcept {
  for (const Gate& g : gates)
    if (!espnor::is_native(g.kind)) return false;
  return true;
}

Circuit inverse(const Circuit& c) {
  Circuit out(c.n_qubits);
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) out.gates.push_back(inverse(*it));
  return out;
}

std::string serialize_circuit(const Circuit& c) {
  std::ostringstream os;
  os << kCircuitFormat << "\nqubits " << c.n_qubits << "\n";
  char buf[40];
  for (const Gate& g : c.gates) {
    os << to_string(g.kind);
    for (int i = 0; i < g.arity(); ++i) os << ' ' << g.q[i];
    if (has_angle(g.kind)) {
      std::snprintf(buf, sizeof buf, "%.17g", g.theta);
      os << ' ' << buf;
    }
    os << '\n';
  }
  return os.str();
}

Circuit parse_circuit(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      if (auto pos = out.find('#'); pos != std::string::npos) out.erase(pos);
      if (out.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  std::string header;
  if (next_line(line)) std::istringstream(line) >> header;
  if (header != kCircuitFormat)
    throw ParseError("format", std::string("expected header '") + kCircuitFormat + "'");
  Circuit c;
  {
    std::string key;
    if (!next_line(line)) throw ParseError("qubits", "missing qubit count line");
    std::istringstream ls(line);
    if (!(ls >> key >> c.n_qubits) || key != "qubits" || c.n_qubits < 0)
      throw ParseError("qubits", "expected 'qubits <n>'");
  }
  while (next_line(line)) {
    const std::string field = "line " + std::to_string(line_no);
    std::istringstream ls(line);
    std::string kind_name;
    ls >> kind_name;
    Gate g;
    try {
      g.kind = parse_gate_kind(kind_name);
    } catch (const std::invalid_argument& e) {
      throw ParseError(field, e.what());
    }
    for (int i = 0; i < g.arity(); ++i)
      if (!(ls >> g.q[i])) throw ParseError(field, "expected " + std::to_string(g.arity()) + " qubit operands");
    if (has_angle(g.kind) && !(ls >> g.theta)) throw ParseError(field, "missing angle");
    std::string rest;
    if (ls >> rest) throw ParseError(field, "unexpected trailing token '" + rest + "'");
    c.gates.push_back(g);
  }
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError("gates", e.what());
  }
  return c;
}

Circuit load_circuit(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open circuit file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_circuit(ss.str());
}

void save_circuit(const Circuit& c, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write circuit file '" + path.string() + "'");
  out << serialize_circuit(c);
}

}  // namespace espnor
