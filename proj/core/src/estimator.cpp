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

#include "espnor/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace espnor {

namespace {

bool in_sector(std::uint64_t idx, const QubitLayout& layout, int na, int nb) {
  return layout.count_alpha(idx) == na && layout.count_beta(idx) == nb;
}

void check_width(int n_qubits, const QubitLayout& layout) {
  if (n_qubits != layout.n_qubits())
    throw std::invalid_argument("bitstring length " + std::to_string(n_qubits) + " does not match layout (" +
                                std::to_string(layout.n_qubits()) + " qubits)");
}

double shot_value(std::uint64_t idx, const QubitLayout& layout, const Eigen::VectorXd& weights, double offset) {
  double e = offset;
  for (int v = 0; v < layout.n_spatial; ++v) e += weights(v) * layout.spatial_occupation(idx, v);
  return e;
}

// Streaming mean / variance over weighted values.
struct Moments {
  double n = 0, mean = 0, m2 = 0, lo = INFINITY, hi = -INFINITY;
  void add(double x, double weight) {
    const double n_new = n + weight;
    const double delta = x - mean;
    mean += delta * weight / n_new;
    m2 += delta * (x - mean) * weight;
    n = n_new;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  EnergyEstimate finish(std::uint64_t used, std::uint64_t total) const {
    EnergyEstimate e;
    e.mean = mean;
    e.n_samples_used = used;
    e.total_shots = total;
    e.min_sample = lo;
    e.max_sample = hi;
    if (used < 2) {
      e.insufficient_statistics = true;
      e.sem = 0.0;
    } else {
      e.sem = std::sqrt(std::max(0.0, m2 / (n - 1)) / n);
    }
    return e;
  }
};

}  // namespace

PostselectedSamples postselect(const BitstringCounts& counts, const QubitLayout& layout, int n_alpha, int n_beta) {
  check_width(counts.n_qubits, layout);
  PostselectedSamples out;
  out.kept.n_qubits = counts.n_qubits;
  for (const auto& [idx, n] : counts.counts) {
    if (in_sector(idx, layout, n_alpha, n_beta))
      out.kept.add(idx, n);
    else
      out.discarded_count += n;
  }
  out.retention_fraction =
      counts.total_shots ? static_cast<double>(out.kept.total_shots) / counts.total_shots : 0.0;
  return out;
}

std::vector<std::uint64_t> postselect_stream(std::span<const std::uint64_t> shots, const QubitLayout& layout,
                                             int n_alpha, int n_beta) {
  std::vector<std::uint64_t> kept;
  for (std::uint64_t s : shots)
    if (in_sector(s, layout, n_alpha, n_beta)) kept.push_back(s);
  return kept;
}

PostselectedDistribution postselect(const Distribution& p, const QubitLayout& layout, int n_alpha, int n_beta) {
  if (p.size() != (std::size_t{1} << layout.n_qubits()))
    throw std::invalid_argument("postselect: distribution size does not match layout");
  PostselectedDistribution out;
  out.kept.assign(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    if (in_sector(i, layout, n_alpha, n_beta)) {
      out.kept[i] = p[i];
      out.retention += p[i];
    }
  if (out.retention > 0)
    for (double& v : out.kept) v /= out.retention;
  return out;
}

Eigen::VectorXd diag_rdm_from_counts(const BitstringCounts& kept, const QubitLayout& layout) {
  check_width(kept.n_qubits, layout);
  if (kept.total_shots == 0) throw std::invalid_argument("diag_rdm_from_counts: empty sample set");
  Eigen::VectorXd g = Eigen::VectorXd::Zero(layout.n_spatial);
  for (const auto& [idx, n] : kept.counts)
    for (int v = 0; v < layout.n_spatial; ++v) g(v) += static_cast<double>(n) * layout.spatial_occupation(idx, v);
  return g / static_cast<double>(kept.total_shots);
}

Eigen::VectorXd diag_rdm_from_distribution(const Distribution& p, const QubitLayout& layout) {
  if (p.size() != (std::size_t{1} << layout.n_qubits()))
    throw std::invalid_argument("diag_rdm_from_distribution: size mismatch");
  Eigen::VectorXd g = Eigen::VectorXd::Zero(layout.n_spatial);
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    total += p[i];
    for (int v = 0; v < layout.n_spatial; ++v) g(v) += p[i] * layout.spatial_occupation(i, v);
  }
  if (!(total > 0)) throw std::invalid_argument("diag_rdm_from_distribution: empty distribution");
  return g / total;
}

EnergyEstimate linear_occupation_estimate(const BitstringCounts& kept, const QubitLayout& layout,
                                          const Eigen::VectorXd& weights, double offset) {
  check_width(kept.n_qubits, layout);
  if (weights.size() != layout.n_spatial) throw std::invalid_argument("estimate: weight count mismatch");
  if (kept.total_shots == 0) throw std::invalid_argument("estimate: empty sample set");
  Moments m;
  for (const auto& [idx, n] : kept.counts) m.add(shot_value(idx, layout, weights, offset), static_cast<double>(n));
  return m.finish(kept.total_shots, kept.total_shots);
}

EnergyEstimate estimate_with_sem(const BitstringCounts& kept, const QubitLayout& layout, const Eigen::VectorXd& w,
                                 double core_term) {
  return linear_occupation_estimate(kept, layout, w, core_term);
}

EnergyEstimate estimate_from_distribution(const Distribution& kept, const QubitLayout& layout,
                                          const Eigen::VectorXd& w, double core_term, std::uint64_t nominal_shots) {
  if (kept.size() != (std::size_t{1} << layout.n_qubits()))
    throw std::invalid_argument("estimate_from_distribution: size mismatch");
  double mean = core_term, total = 0.0;
  const Eigen::VectorXd g = diag_rdm_from_distribution(kept, layout);
  mean += w.dot(g);
  double var = 0.0, lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (kept[i] == 0.0) continue;
    const double e = shot_value(i, layout, w, core_term);
    var += kept[i] * (e - mean) * (e - mean);
    total += kept[i];
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  EnergyEstimate est;
  est.mean = mean;
  est.n_samples_used = nominal_shots;
  est.total_shots = nominal_shots;
  est.min_sample = lo;
  est.max_sample = hi;
  est.insufficient_statistics = nominal_shots < 2;
  est.sem = nominal_shots ? std::sqrt(var / total / static_cast<double>(nominal_shots)) : 0.0;
  return est;
}

std::vector<std::pair<std::uint64_t, EnergyEstimate>> convergence_curve(std::span<const std::uint64_t> stream,
                                                                        const QubitLayout& layout,
                                                                        const Eigen::VectorXd& w, double core_term,
                                                                        std::span<const std::uint64_t> grid) {
  if (!std::is_sorted(grid.begin(), grid.end())) throw std::invalid_argument("convergence_curve: grid not sorted");
  if (!grid.empty() && grid.back() > stream.size())
    throw std::invalid_argument("convergence_curve: grid exceeds the " + std::to_string(stream.size()) +
                                " available shots");
  std::vector<std::pair<std::uint64_t, EnergyEstimate>> out;
  Moments m;
  std::size_t consumed = 0;
  for (std::uint64_t n : grid) {
    for (; consumed < n; ++consumed) m.add(shot_value(stream[consumed], layout, w, core_term), 1.0);
    if (n == 0) continue;
    out.emplace_back(n, m.finish(n, n));
  }
  return out;
}

std::vector<std::uint64_t> default_convergence_grid(std::uint64_t available, bool include_small) {
  std::vector<std::uint64_t> grid;
  const std::uint64_t steps[3] = {1, 2, 5};
  for (std::uint64_t decade = 1; decade <= available; decade *= 10)
    for (std::uint64_t s : steps) {
      const std::uint64_t n = s * decade;
      if (n > available || n < 2) continue;
      if (n < 1000 && !include_small) continue;
      grid.push_back(n);
    }
  if (available >= 1 && (grid.empty() || grid.back() != available)) grid.push_back(available);
  return grid;
}

std::string convergence_csv(const std::vector<std::pair<std::uint64_t, EnergyEstimate>>& curve) {
  std::ostringstream os;
  os << "n,mean_kcalmol,sem_kcalmol\n";
  char buf[96];
  for (const auto& [n, e] : curve) {
    std::snprintf(buf, sizeof buf, "%llu,%.12g,%.12g\n", static_cast<unsigned long long>(n),
                  e.mean * kHartreeToKcalMol, e.sem * kHartreeToKcalMol);
    os << buf;
  }
  return os.str();
}

double bhattacharyya(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("bhattacharyya: size mismatch");
  const double sp = std::accumulate(p.begin(), p.end(), 0.0);
  const double sq = std::accumulate(q.begin(), q.end(), 0.0);
  if (std::abs(sp - 1.0) > 1e-9 || std::abs(sq - 1.0) > 1e-9)
    throw std::invalid_argument("bhattacharyya: inputs must be normalized");
  double bc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0 || q[i] < 0) throw std::invalid_argument("bhattacharyya: negative probability");
    bc += std::sqrt(p[i] * q[i]);
  }
  return std::min(bc, 1.0);
}

}  // namespace espnor
