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

#ifndef ESPNOR_ESTIMATOR_HPP
#define ESPNOR_ESTIMATOR_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "espnor/electrostatics.hpp"
#include "espnor/jordan_wigner.hpp"
#include "espnor/sampling.hpp"

namespace espnor {

struct PostselectedSamples {
  BitstringCounts kept;
  std::uint64_t discarded_count = 0;
  double retention_fraction = 0.0;
};

/// Keeps outcomes whose alpha and beta blocks hold n_alpha and n_beta
/// electrons under the layout's occupation convention.
PostselectedSamples postselect(const BitstringCounts& counts, const QubitLayout& layout, int n_alpha, int n_beta);

/// Order-preserving filter of a shot stream.
std::vector<std::uint64_t> postselect_stream(std::span<const std::uint64_t> shots, const QubitLayout& layout,
                                             int n_alpha, int n_beta);

/// Kept probability mass (retention) and the renormalized in-sector distribution.
struct PostselectedDistribution {
  Distribution kept;
  double retention = 0.0;
};
PostselectedDistribution postselect(const Distribution& p, const QubitLayout& layout, int n_alpha, int n_beta);

/// Mean spatial occupations n_{v,alpha} + n_{v,beta}.
Eigen::VectorXd diag_rdm_from_counts(const BitstringCounts& kept, const QubitLayout& layout);
Eigen::VectorXd diag_rdm_from_distribution(const Distribution& p, const QubitLayout& layout);

/// Mean and Bessel-corrected sem of the per-shot values
/// offset + sum_v weights_v * occupation_v(shot).
EnergyEstimate linear_occupation_estimate(const BitstringCounts& kept, const QubitLayout& layout,
                                          const Eigen::VectorXd& weights, double offset);

/// Per-shot electrostatic energy core_term + sum_v w_v occupation_v.
EnergyEstimate estimate_with_sem(const BitstringCounts& kept, const QubitLayout& layout, const Eigen::VectorXd& w,
                                 double core_term);

/// Same statistic from exact probabilities: mean is exact, sem is the
/// single-shot standard deviation over sqrt(nominal_shots).
EnergyEstimate estimate_from_distribution(const Distribution& kept, const QubitLayout& layout,
                                          const Eigen::VectorXd& w, double core_term, std::uint64_t nominal_shots);

/// Prefix estimates over the in-order shot stream at each grid size.
std::vector<std::pair<std::uint64_t, EnergyEstimate>> convergence_curve(std::span<const std::uint64_t> kept_stream,
                                                                        const QubitLayout& layout,
                                                                        const Eigen::VectorXd& w, double core_term,
                                                                        std::span<const std::uint64_t> grid);

/// 1000, 2000, 5000, 10000, ... up to `available`, which is always the last
/// point; `include_small` prepends 2, 5, 10, ..., 500.
std::vector<std::uint64_t> default_convergence_grid(std::uint64_t available, bool include_small);

/// "n,mean_kcalmol,sem_kcalmol" rows.
std::string convergence_csv(const std::vector<std::pair<std::uint64_t, EnergyEstimate>>& curve);

/// sum_i sqrt(p_i q_i); both inputs must be normalized within 1e-9.
double bhattacharyya(std::span<const double> p, std::span<const double> q);

}  // namespace espnor

#endif  // ESPNOR_ESTIMATOR_HPP
