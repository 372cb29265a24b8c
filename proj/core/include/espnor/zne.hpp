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

#ifndef ESPNOR_ZNE_HPP
#define ESPNOR_ZNE_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "espnor/circuit.hpp"
#include "espnor/config.hpp"
#include "espnor/electrostatics.hpp"
#include "espnor/jordan_wigner.hpp"
#include "espnor/noise.hpp"
#include "espnor/sampling.hpp"

namespace espnor {

/// Replaces randomly chosen gates g by g g^dagger g until the circuit holds
/// about lambda times as many gates: round((lambda-1) n0 / 2) folds, gates
/// drawn without replacement within each pass over the circuit.
/// lambda = 1 returns the input unchanged. Requires a native circuit.
Circuit fold_gates_at_random(const Circuit& native, double lambda, std::uint64_t seed);

/// Fit of f(lambda) = a + b exp(-c lambda) for one computational state.
struct ZneFit {
  double a = 0.0, b = 0.0, c = 0.0;
  double sigma_a = 0.0, sigma_b = 0.0;
  bool ok = true;
  /// Data were constant across lambda; no fit was needed.
  bool constant = false;

  double at_zero() const noexcept { return a + b; }
};

/// Least-squares fit (Levenberg-Marquardt, c kept non-negative) with
/// start a = ys.back(), b = ys.front() - ys.back(), c = 1. Parameter errors
/// follow inv(J^T J) * RSS / (m - 3). A failed fit has ok = false.
ZneFit fit_exponential(std::span<const double> xs, std::span<const double> ys);

struct ZneExtrapolation {
  Distribution distribution;  // clipped at 0 and renormalized
  std::vector<double> sigma;  // sqrt(sigma_a^2 + sigma_b^2); +inf where the fit failed
  std::vector<ZneFit> fits;
  std::size_t failed_fits = 0;
};

/// Extrapolates every state's frequency to lambda = 0 using the measured
/// scale factors plus the uniform anchor point. On failure the lambda = 1
/// value is kept and its sigma set to infinity.
ZneExtrapolation zne_extrapolate_frequencies(const std::vector<Distribution>& freq_by_lambda, const ZneConfig& config,
                                             int n_qubits);

/// Postselection, diagonal 1-PDM and w-weighted sum applied to an
/// extrapolated distribution, with Gaussian propagation of the per-state
/// sigmas through the renormalization over kept states.
EnergyEstimate mitigated_electrostatics(const Distribution& extrapolated, std::span<const double> sigma,
                                        const QubitLayout& layout, int n_alpha, int n_beta, const Eigen::VectorXd& w,
                                        double core_term);

/// Per-lambda folded circuits and their measured distributions.
struct ZneMeasurement {
  std::vector<double> lambdas;
  std::vector<std::size_t> gate_counts;
  std::vector<Distribution> distributions;
};

/// Folds `native` at every configured lambda and simulates it under `noise`.
/// With trajectories_per_lambda = 0 the exact noisy probabilities are used.
ZneMeasurement zne_measure(const Circuit& native, const NoiseSpec& noise, const ZneConfig& config);

/// Prepends a full X layer and negates every G / PX angle, so the outcome
/// read under zero_is_occupied matches the original read under
/// one_is_occupied. Only X, G and PX gates are accepted.
std::pair<Circuit, std::vector<double>> invert_occupation_convention(const Circuit& circuit,
                                                                    std::span<const double> theta);

}  // namespace espnor

#endif  // ESPNOR_ZNE_HPP
