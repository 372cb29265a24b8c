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

#include "espnor/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace espnor {

BitstringCounts BitstringCounts::from_shots(int n_qubits, std::span<const std::uint64_t> shots) {
  BitstringCounts c;
  c.n_qubits = n_qubits;
  for (std::uint64_t s : shots) c.add(s);
  return c;
}

Distribution to_distribution(const BitstringCounts& counts) {
  if (counts.total_shots == 0) throw std::invalid_argument("to_distribution: no shots recorded");
  Distribution d(std::size_t{1} << counts.n_qubits, 0.0);
  for (const auto& [index, n] : counts.counts) d.at(index) = static_cast<double>(n) / counts.total_shots;
  return d;
}

CdfSampler::CdfSampler(std::span<const double> probabilities) : cdf_(probabilities.size()) {
  if (probabilities.empty()) throw std::invalid_argument("CdfSampler: empty distribution");
  double acc = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (!(probabilities[i] >= 0.0)) throw std::invalid_argument("CdfSampler: negative probability");
    acc += probabilities[i];
    cdf_[i] = acc;
  }
  if (!(acc > 0.0)) throw std::invalid_argument("CdfSampler: zero total probability");
  for (double& c : cdf_) c /= acc;
}

std::uint64_t CdfSampler::operator()(std::mt19937_64& rng) const {
  const double u = uniform01(rng);
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  // Rounding can leave the last cumulative value a hair below 1.
  if (it == cdf_.end()) it = std::prev(cdf_.end());
  // Skip trailing zero-probability states reached through rounding.
  std::size_t idx = static_cast<std::size_t>(it - cdf_.begin());
  while (idx > 0 && cdf_[idx] == cdf_[idx - 1]) --idx;
  return idx;
}

std::vector<std::uint64_t> sample_shots(std::span<const double> probabilities, std::uint64_t shots,
                                        std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("sample: shots must be >= 1");
  CdfSampler sampler(probabilities);
  auto rng = make_stream(seed, 0);
  std::vector<std::uint64_t> out(shots);
  for (auto& s : out) s = sampler(rng);
  return out;
}

std::vector<std::uint64_t> sample_shots(const StateVector& state, std::uint64_t shots, std::uint64_t seed) {
  const auto p = state.probabilities();
  return sample_shots(p, shots, seed);
}

BitstringCounts sample(const StateVector& state, std::uint64_t shots, std::uint64_t seed) {
  const auto stream = sample_shots(state, shots, seed);
  return BitstringCounts::from_shots(state.n_qubits(), stream);
}

Distribution analytic_distribution(const StateVector& state) { return state.probabilities(); }

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("total_variation: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - q[i]);
  return 0.5 * acc;
}

}  // namespace espnor
