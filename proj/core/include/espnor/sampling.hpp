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

#ifndef ESPNOR_SAMPLING_HPP
#define ESPNOR_SAMPLING_HPP

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

#include "espnor/statevector.hpp"

namespace espnor {

/// Dense outcome distribution over 2^n basis states.
using Distribution = std::vector<double>;

/// Measurement record: basis index -> count.
struct BitstringCounts {
  int n_qubits = 0;
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t total_shots = 0;

  void add(std::uint64_t index, std::uint64_t n = 1) {
    if (n == 0) return;
    counts[index] += n;
    total_shots += n;
  }
  std::uint64_t count(std::uint64_t index) const {
    auto it = counts.find(index);
    return it == counts.end() ? 0 : it->second;
  }
  bool operator==(const BitstringCounts&) const = default;

  static BitstringCounts from_shots(int n_qubits, std::span<const std::uint64_t> shots);
};

/// Empirical frequencies as a dense distribution.
Distribution to_distribution(const BitstringCounts& counts);

/// Cumulative table for repeated inverse-CDF draws.
class CdfSampler {
 public:
  explicit CdfSampler(std::span<const double> probabilities);
  std::uint64_t operator()(std::mt19937_64& rng) const;

 private:
  std::vector<double> cdf_;
};

/// Ordered i.i.d. draws (the shot stream) from `probabilities`.
std::vector<std::uint64_t> sample_shots(std::span<const double> probabilities, std::uint64_t shots,
                                        std::uint64_t seed);

/// Shot stream of |amplitude|^2 of `state`.
std::vector<std::uint64_t> sample_shots(const StateVector& state, std::uint64_t shots, std::uint64_t seed);

BitstringCounts sample(const StateVector& state, std::uint64_t shots, std::uint64_t seed);

/// Analytic mode: the exact outcome distribution, no sampling noise.
Distribution analytic_distribution(const StateVector& state);

/// Total-variation distance 0.5 * sum |p - q|.
double total_variation(std::span<const double> p, std::span<const double> q);

}  // namespace espnor

#endif  // ESPNOR_SAMPLING_HPP
