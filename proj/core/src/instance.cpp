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

#include "espnor/instance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "espnor/common.hpp"

namespace espnor {

using json = nlohmann::ordered_json;

namespace {

constexpr double kSymmetryTol = 1e-10;
constexpr double kOrthonormalTol = 1e-8;
constexpr double kElectronCountTol = 1e-6;

std::array<std::array<int, 4>, 8> symmetric_partners(int p, int q, int r, int s) {
  return {{{p, q, r, s},
           {q, p, r, s},
           {p, q, s, r},
           {q, p, s, r},
           {r, s, p, q},
           {s, r, p, q},
           {r, s, q, p},
           {s, r, q, p}}};
}

const json& require(const json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(key, "missing required key");
  return j.at(key);
}

double as_number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ParseError(field, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ParseError(field, "expected an integer");
  return j.get<int>();
}

Eigen::MatrixXd as_matrix(const json& j, const std::string& field, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw ParseError(field, "expected " + std::to_string(rows) + " rows");
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw ParseError(field, "row " + std::to_string(i) + " must have " + std::to_string(cols) +
                                  " entries");
    for (int k = 0; k < cols; ++k) m(i, k) = as_number(row[k], field);
  }
  return m;
}

std::vector<int> as_index_list(const json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError(field, "expected an array of indices");
  std::vector<int> out;
  for (const auto& v : j) out.push_back(as_int(v, field));
  return out;
}

EriTensor as_eri(const json& j, const std::string& field, int n) {
  if (!j.is_array()) throw ParseError(field, "expected a list of [p, q, r, s, value] entries");
  std::vector<EriTensor::Entry> entries;
  entries.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 5) throw ParseError(field, "each entry must be a 5-tuple");
    EriTensor::Entry entry{as_int(e[0], field), as_int(e[1], field), as_int(e[2], field),
                           as_int(e[3], field), as_number(e[4], field)};
    for (int idx : {entry.p, entry.q, entry.r, entry.s})
      if (idx < 0 || idx >= n)
        throw ParseError(field, "index " + std::to_string(idx) + " out of range [0, " +
                                    std::to_string(n) + ")");
    entries.push_back(entry);
  }
  return eri_from_entries(n, entries, field);
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

json eri_to_json(const EriTensor& t) {
  json list = json::array();
  for (const auto& e : t.canonical_entries()) list.push_back(json::array({e.p, e.q, e.r, e.s, e.value}));
  return list;
}

double asymmetry(const Eigen::MatrixXd& m) { return (m - m.transpose()).cwiseAbs().maxCoeff(); }

void check_symmetric(const Eigen::MatrixXd& m, const std::string& field) {
  if (m.size() == 0) return;
  const double r = asymmetry(m);
  if (!(r <= kSymmetryTol)) throw ValidationError(field + " symmetric", r, field + " is not symmetric");
}

}  // namespace

void EriTensor::set_symmetric(int p, int q, int r, int s, double value) {
  for (const auto& [a, b, c, d] : symmetric_partners(p, q, r, s)) data_[index(a, b, c, d)] = value;
}

std::vector<EriTensor::Entry> EriTensor::canonical_entries() const {
  std::vector<Entry> out;
  for (int p = 0; p < n_; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r < n_; ++r)
        for (int s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
          const double v = (*this)(p, q, r, s);
          if (v != 0.0) out.push_back({p, q, r, s, v});
        }
  return out;
}

double EriTensor::symmetry_residual() const {
  double worst = 0.0;
  for (int p = 0; p < n_; ++p)
    for (int q = 0; q < n_; ++q)
      for (int r = 0; r < n_; ++r)
        for (int s = 0; s < n_; ++s) {
          const double v = (*this)(p, q, r, s);
          for (const auto& [a, b, c, d] : symmetric_partners(p, q, r, s))
            worst = std::max(worst, std::abs(v - (*this)(a, b, c, d)));
        }
  return worst;
}

EriTensor eri_from_entries(int n, const std::vector<EriTensor::Entry>& entries,
                           const std::string& field) {
  EriTensor t(n);
  std::vector<char> seen(t.data_.size(), 0);
  for (const auto& e : entries) {
    for (const auto& [a, b, c, d] : symmetric_partners(e.p, e.q, e.r, e.s)) {
      const std::size_t k = t.index(a, b, c, d);
      if (seen[k] && std::abs(t.data_[k] - e.value) > kSymmetryTol) {
        throw ValidationError(field + " 8-fold symmetry", std::abs(t.data_[k] - e.value),
                              "conflicting values for symmetry-equivalent (" + std::to_string(a) +
                                  "," + std::to_string(b) + "|" + std::to_string(c) + "," +
                                  std::to_string(d) + ")");
      }
      t.data_[k] = e.value;
      seen[k] = 1;
    }
  }
  return t;
}

bool ProblemInstance::operator==(const ProblemInstance& o) const {
  auto same = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.size() == 0 || a == b);
  };
  return n_ao == o.n_ao && n_mo == o.n_mo && same(C, o.C) && same(S, o.S) && eri_ao == o.eri_ao &&
         same(V_A_ao, o.V_A_ao) && same(V_B_ao, o.V_B_ao) && same(gamma_B_ao, o.gamma_B_ao) &&
         V_AB == o.V_AB && N_A == o.N_A && N_B == o.N_B && active == o.active &&
         same(h_act, o.h_act) && g_act == o.g_act && E_core == o.E_core;
}

void validate(const ProblemInstance& in) {
  if (in.n_ao < 1) throw ParseError("n_ao", "must be >= 1");
  if (in.n_mo < 1 || in.n_mo > in.n_ao) throw ParseError("n_mo", "must satisfy 1 <= n_mo <= n_ao");
  auto shape = [](const Eigen::MatrixXd& m, int r, int c, const char* field) {
    if (m.rows() != r || m.cols() != c)
      throw ParseError(field, "expected shape " + std::to_string(r) + "x" + std::to_string(c));
  };
  shape(in.C, in.n_ao, in.n_mo, "C");
  shape(in.S, in.n_ao, in.n_ao, "S");
  shape(in.V_A_ao, in.n_ao, in.n_ao, "V_A_ao");
  shape(in.V_B_ao, in.n_ao, in.n_ao, "V_B_ao");
  shape(in.gamma_B_ao, in.n_ao, in.n_ao, "gamma_B_ao");
  if (in.eri_ao.dim() != in.n_ao) throw ParseError("eri_ao", "dimension must equal n_ao");
  if (in.N_A < 1) throw ParseError("N_A", "must be a positive integer");
  if (in.N_B < 1) throw ParseError("N_B", "must be a positive integer");

  const auto& act = in.active;
  std::set<int> seen;
  for (int t : act.core_mo) {
    if (t < 0 || t >= in.n_mo) throw ParseError("active.core_mo", "index out of range");
    if (!seen.insert(t).second) throw ParseError("active.core_mo", "duplicate MO index");
  }
  for (int t : act.active_mo) {
    if (t < 0 || t >= in.n_mo) throw ParseError("active.active_mo", "index out of range");
    if (!seen.insert(t).second)
      throw ParseError("active.active_mo", "MO index repeated or shared with core");
  }
  if (act.active_mo.empty()) throw ParseError("active.active_mo", "at least one active MO required");
  if (act.n_alpha < 0 || act.n_alpha > act.n_active())
    throw ParseError("active.n_alpha", "must lie in [0, n_active]");
  if (act.n_beta < 0 || act.n_beta > act.n_active())
    throw ParseError("active.n_beta", "must lie in [0, n_active]");
  const int n_act = act.n_active();
  shape(in.h_act, n_act, n_act, "h_act");
  if (in.g_act.dim() != n_act) throw ParseError("g_act", "dimension must equal the active MO count");

  const int electrons = 2 * static_cast<int>(act.core_mo.size()) + act.n_alpha + act.n_beta;
  if (electrons != in.N_A)
    throw ValidationError("N_A = 2*n_core + n_alpha + n_beta", std::abs(electrons - in.N_A),
                          "active-space electron count inconsistent with N_A");

  check_symmetric(in.S, "S");
  check_symmetric(in.V_A_ao, "V_A_ao");
  check_symmetric(in.V_B_ao, "V_B_ao");
  check_symmetric(in.gamma_B_ao, "gamma_B_ao");
  check_symmetric(in.h_act, "h_act");

  const double ortho =
      (in.C.transpose() * in.S * in.C - Eigen::MatrixXd::Identity(in.n_mo, in.n_mo)).cwiseAbs().maxCoeff();
  if (!(ortho <= kOrthonormalTol))
    throw ValidationError("MO orthonormality C^T S C = I", ortho, "C is not S-orthonormal");

  const double nb = (in.S.array() * in.gamma_B_ao.array()).sum();
  if (!(std::abs(nb - in.N_B) <= kElectronCountTol))
    throw ValidationError("electron count sum S*gamma_B = N_B", std::abs(nb - in.N_B),
                          "gamma_B_ao does not integrate to N_B");

  const double r1 = in.eri_ao.symmetry_residual();
  if (!(r1 <= kSymmetryTol)) throw ValidationError("eri_ao 8-fold symmetry", r1, "eri_ao asymmetric");
  const double r2 = in.g_act.symmetry_residual();
  if (!(r2 <= kSymmetryTol)) throw ValidationError("g_act 8-fold symmetry", r2, "g_act asymmetric");

  for (double v : {in.V_AB, in.E_core})
    if (!std::isfinite(v)) throw ParseError("V_AB/E_core", "must be finite");
}

ProblemInstance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("<document>", e.what());
  }
  const auto& fmt = require(j, "format");
  if (!fmt.is_string() || fmt.get<std::string>() != kInstanceFormat)
    throw ParseError("format", std::string("expected version tag ") + kInstanceFormat);

  ProblemInstance in;
  in.n_ao = as_int(require(j, "n_ao"), "n_ao");
  in.n_mo = as_int(require(j, "n_mo"), "n_mo");
  if (in.n_ao < 1 || in.n_ao > 64) throw ParseError("n_ao", "must lie in [1, 64]");
  if (in.n_mo < 1 || in.n_mo > in.n_ao) throw ParseError("n_mo", "must satisfy 1 <= n_mo <= n_ao");
  in.C = as_matrix(require(j, "C"), "C", in.n_ao, in.n_mo);
  in.S = as_matrix(require(j, "S"), "S", in.n_ao, in.n_ao);
  in.eri_ao = as_eri(require(j, "eri_ao"), "eri_ao", in.n_ao);
  in.V_A_ao = as_matrix(require(j, "V_A_ao"), "V_A_ao", in.n_ao, in.n_ao);
  in.V_B_ao = as_matrix(require(j, "V_B_ao"), "V_B_ao", in.n_ao, in.n_ao);
  in.gamma_B_ao = as_matrix(require(j, "gamma_B_ao"), "gamma_B_ao", in.n_ao, in.n_ao);
  in.V_AB = as_number(require(j, "V_AB"), "V_AB");
  in.N_A = as_int(require(j, "N_A"), "N_A");
  in.N_B = as_int(require(j, "N_B"), "N_B");

  const auto& act = require(j, "active");
  in.active.core_mo = as_index_list(require(act, "core_mo"), "active.core_mo");
  in.active.active_mo = as_index_list(require(act, "active_mo"), "active.active_mo");
  in.active.n_alpha = as_int(require(act, "n_alpha"), "active.n_alpha");
  in.active.n_beta = as_int(require(act, "n_beta"), "active.n_beta");
  const int n_act = in.active.n_active();
  if (n_act < 1) throw ParseError("active.active_mo", "at least one active MO required");

  in.h_act = as_matrix(require(j, "h_act"), "h_act", n_act, n_act);
  in.g_act = as_eri(require(j, "g_act"), "g_act", n_act);
  in.E_core = as_number(require(j, "E_core"), "E_core");

  validate(in);
  return in;
}

std::string serialize_instance(const ProblemInstance& in) {
  json j;
  j["format"] = kInstanceFormat;
  j["n_ao"] = in.n_ao;
  j["n_mo"] = in.n_mo;
  j["C"] = matrix_to_json(in.C);
  j["S"] = matrix_to_json(in.S);
  j["eri_ao"] = eri_to_json(in.eri_ao);
  j["V_A_ao"] = matrix_to_json(in.V_A_ao);
  j["V_B_ao"] = matrix_to_json(in.V_B_ao);
  j["gamma_B_ao"] = matrix_to_json(in.gamma_B_ao);
  j["V_AB"] = in.V_AB;
  j["N_A"] = in.N_A;
  j["N_B"] = in.N_B;
  j["active"] = {{"core_mo", in.active.core_mo},
                 {"active_mo", in.active.active_mo},
                 {"n_alpha", in.active.n_alpha},
                 {"n_beta", in.active.n_beta}};
  j["h_act"] = matrix_to_json(in.h_act);
  j["g_act"] = eri_to_json(in.g_act);
  j["E_core"] = in.E_core;
  return j.dump(1) + "\n";
}

ProblemInstance load_instance(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ParseError(path.string(), "cannot open instance file");
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_instance(buf.str());
}

void save_instance(const ProblemInstance& instance, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path.string());
  file << serialize_instance(instance);
}

std::string instance_digest(const ProblemInstance& instance) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : serialize_instance(instance)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

namespace {

Eigen::MatrixXd random_normal(int rows, int cols, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> dist(0.0, scale);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) m(i, k) = dist(rng);
  return m;
}

Eigen::MatrixXd random_symmetric(int n, std::mt19937_64& rng, double scale) {
  Eigen::MatrixXd m = random_normal(n, n, rng, scale);
  return 0.5 * (m + m.transpose());
}

Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_normal(n, n, rng, 1.0));
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k)
    if (r(k, k) < 0) q.col(k) *= -1.0;
  return q;
}

Eigen::MatrixXd symmetric_power(const Eigen::MatrixXd& s, double power) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  const Eigen::VectorXd d = es.eigenvalues().array().pow(power);
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

void fix_column_signs(Eigen::MatrixXd& c) {
  for (Eigen::Index k = 0; k < c.cols(); ++k) {
    Eigen::Index pivot = 0;
    c.col(k).cwiseAbs().maxCoeff(&pivot);
    if (c(pivot, k) < 0) c.col(k) *= -1.0;
  }
}

// Closed-shell SCF for the model monomer; returns S-orthonormal canonical MOs.
Eigen::MatrixXd closed_shell_scf(const Eigen::MatrixXd& hcore, const Eigen::MatrixXd& s,
                                 const EriTensor& eri, int n_occ) {
  const int n = static_cast<int>(s.rows());
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(hcore, s);
  Eigen::MatrixXd c = es.eigenvectors();
  Eigen::MatrixXd d = 2.0 * c.leftCols(n_occ) * c.leftCols(n_occ).transpose();
  for (int iter = 0; iter < 500; ++iter) {
    Eigen::MatrixXd f = hcore;
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        double g = 0.0;
        for (int r = 0; r < n; ++r)
          for (int t = 0; t < n; ++t) g += d(r, t) * (eri(p, q, r, t) - 0.5 * eri(p, r, q, t));
        f(p, q) += g;
      }
    es.compute(f, s);
    c = es.eigenvectors();
    const Eigen::MatrixXd d_new = 2.0 * c.leftCols(n_occ) * c.leftCols(n_occ).transpose();
    const double change = (d_new - d).cwiseAbs().maxCoeff();
    d = 0.5 * (d + d_new);
    if (change < 1e-12) break;
  }
  fix_column_signs(c);
  return c;
}

}  // namespace

ProblemInstance generate_synthetic_instance(int n_ao, int n_act, std::uint64_t seed) {
  if (n_act < 1 || n_act > n_ao || n_ao > 8)
    throw std::invalid_argument("generate_synthetic_instance requires 1 <= n_act <= n_ao <= 8");
  auto rng = make_stream(seed, 0x5eed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = n_ao;

  // Overlap: unit diagonal, positive definite.
  Eigen::MatrixXd x = random_normal(n, n, rng, 1.0);
  Eigen::MatrixXd s0 = Eigen::MatrixXd::Identity(n, n) + 0.2 * x * x.transpose() / n;
  const Eigen::VectorXd inv_sqrt_diag = s0.diagonal().array().rsqrt();
  Eigen::MatrixXd s = inv_sqrt_diag.asDiagonal() * s0 * inv_sqrt_diag.asDiagonal();
  s = 0.5 * (s + s.transpose());
  const Eigen::MatrixXd s_half = symmetric_power(s, 0.5);
  const Eigen::MatrixXd s_inv_half = symmetric_power(s, -0.5);

  // Monomer A one-body operator with well separated orbital levels.
  Eigen::VectorXd levels(n);
  for (int k = 0; k < n; ++k) levels(k) = -1.6 + 0.75 * k + 0.1 * unit(rng);
  const Eigen::MatrixXd q_a = random_orthogonal(n, rng);
  Eigen::MatrixXd h_orth = q_a * levels.asDiagonal() * q_a.transpose() + random_symmetric(n, rng, 0.02);
  h_orth = 0.5 * (h_orth + h_orth.transpose());
  const Eigen::MatrixXd hcore = s_half * h_orth * s_half;

  // ERIs as a sum of outer products of symmetric densities: PSD with 8-fold symmetry.
  constexpr double kCoulombScale = 0.55;
  constexpr double kFluctuation = 0.06;
  const int n_pair = n * (n + 1) / 2;
  std::vector<Eigen::MatrixXd> factors;
  factors.push_back(kCoulombScale * s);
  for (int l = 0; l < n_pair; ++l) factors.push_back(s_half * random_symmetric(n, rng, kFluctuation) * s_half);
  EriTensor eri(n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r < n; ++r)
        for (int t = 0; t <= r; ++t) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + t) continue;
          double v = 0.0;
          for (const auto& b : factors) v += b(p, q) * b(r, t);
          eri.set_symmetric(p, q, r, t, v);
        }

  ProblemInstance in;
  in.n_ao = n;
  in.n_mo = n;
  in.S = s;
  in.eri_ao = eri;

  const int n_core = (n_ao - n_act) / 2;
  const int n_pairs_act = (n_act + 1) / 2;
  in.N_A = 2 * (n_core + n_pairs_act);
  for (int t = 0; t < n_core; ++t) in.active.core_mo.push_back(t);
  for (int t = 0; t < n_act; ++t) in.active.active_mo.push_back(n_core + t);
  in.active.n_alpha = n_pairs_act;
  in.active.n_beta = n_pairs_act;

  in.C = closed_shell_scf(hcore, s, eri, n_core + n_pairs_act);

  // Monomer B: closed-shell idempotent density in its own orbitals.
  const int n_occ_b = std::max(1, n / 2);
  in.N_B = 2 * n_occ_b;
  const Eigen::MatrixXd c_b = s_inv_half * random_orthogonal(n, rng);
  in.gamma_B_ao = 2.0 * c_b.leftCols(n_occ_b) * c_b.leftCols(n_occ_b).transpose();
  in.gamma_B_ao = 0.5 * (in.gamma_B_ao + in.gamma_B_ao.transpose());

  // Neutral monomers at separation ~1/kCoulombScale^2: the four electrostatic
  // terms largely cancel, as they do for real closed-shell fragments.
  const double inv_r = kCoulombScale * kCoulombScale;
  in.V_A_ao = -(in.N_A * inv_r) * (s + random_symmetric(n, rng, 0.05));
  in.V_B_ao = -(in.N_B * inv_r) * (s + random_symmetric(n, rng, 0.05));
  in.V_A_ao = 0.5 * (in.V_A_ao + in.V_A_ao.transpose());
  in.V_B_ao = 0.5 * (in.V_B_ao + in.V_B_ao.transpose());
  in.V_AB = in.N_A * in.N_B * inv_r * (1.0 + 0.05 * (unit(rng) - 0.5));

  // Fold the frozen core into the active-space integrals.
  const Eigen::MatrixXd& c = in.C;
  const Eigen::MatrixXd h_mo = c.transpose() * hcore * c;
  EriTensor eri_mo(n);
  {
    std::vector<double> t1(static_cast<std::size_t>(n) * n * n * n, 0.0);
    std::vector<double> t2(t1.size(), 0.0);
    auto at = [n](std::vector<double>& v, int a, int b, int cc, int d) -> double& {
      return v[((static_cast<std::size_t>(a) * n + b) * n + cc) * n + d];
    };
    for (int a = 0; a < n; ++a)
      for (int q = 0; q < n; ++q)
        for (int r = 0; r < n; ++r)
          for (int t = 0; t < n; ++t) {
            double v = 0.0;
            for (int p = 0; p < n; ++p) v += c(p, a) * eri(p, q, r, t);
            at(t1, a, q, r, t) = v;
          }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int r = 0; r < n; ++r)
          for (int t = 0; t < n; ++t) {
            double v = 0.0;
            for (int q = 0; q < n; ++q) v += c(q, b) * at(t1, a, q, r, t);
            at(t2, a, b, r, t) = v;
          }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int cc = 0; cc < n; ++cc)
          for (int t = 0; t < n; ++t) {
            double v = 0.0;
            for (int r = 0; r < n; ++r) v += c(r, cc) * at(t2, a, b, r, t);
            at(t1, a, b, cc, t) = v;
          }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b <= a; ++b)
        for (int cc = 0; cc < n; ++cc)
          for (int d = 0; d <= cc; ++d) {
            if (a * (a + 1) / 2 + b < cc * (cc + 1) / 2 + d) continue;
            double v = 0.0;
            for (int t = 0; t < n; ++t) v += c(t, d) * at(t1, a, b, cc, t);
            eri_mo.set_symmetric(a, b, cc, d, v);
          }
  }

  const double e_nuc_a = 1.0 + 2.0 * unit(rng);
  double e_core = e_nuc_a;
  for (int a : in.active.core_mo) {
    e_core += 2.0 * h_mo(a, a);
    for (int b : in.active.core_mo) e_core += 2.0 * eri_mo(a, a, b, b) - eri_mo(a, b, b, a);
  }
  in.E_core = e_core;

  in.h_act.resize(n_act, n_act);
  for (int i = 0; i < n_act; ++i)
    for (int k = 0; k < n_act; ++k) {
      const int t = in.active.active_mo[i];
      const int u = in.active.active_mo[k];
      double v = h_mo(t, u);
      for (int a : in.active.core_mo) v += 2.0 * eri_mo(t, u, a, a) - eri_mo(t, a, a, u);
      in.h_act(i, k) = v;
    }
  in.h_act = 0.5 * (in.h_act + in.h_act.transpose());

  in.g_act = EriTensor(n_act);
  for (int i = 0; i < n_act; ++i)
    for (int k = 0; k <= i; ++k)
      for (int l = 0; l < n_act; ++l)
        for (int m = 0; m <= l; ++m) {
          if (i * (i + 1) / 2 + k < l * (l + 1) / 2 + m) continue;
          const auto& am = in.active.active_mo;
          in.g_act.set_symmetric(i, k, l, m, eri_mo(am[i], am[k], am[l], am[m]));
        }

  validate(in);
  return in;
}

}  // namespace espnor
