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

#ifndef ESPNOR_CONFIG_HPP
#define ESPNOR_CONFIG_HPP

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "espnor/jordan_wigner.hpp"
#include "espnor/noise.hpp"

namespace espnor {

struct OptimizerConfig {
  int max_iterations = 500;
  double gradient_tolerance = 1e-7;
  int restarts = 5;
  double initial_parameter_scale = 0.1;
  double finite_difference_step = 1e-5;

  void validate() const;
  bool operator==(const OptimizerConfig&) const = default;
};

struct ZneConfig {
  std::vector<double> lambdas{1.0, 2.0, 3.0};
  double anchor_lambda = 1e5;
  /// Defaults to 1/2^n for an n-qubit register when unset.
  std::optional<double> anchor_value;
  /// Shots per scale factor; 0 uses the exact noisy probabilities.
  std::uint64_t trajectories_per_lambda = 40000;
  std::uint64_t rng_seed = 0;
  NoiseMode mode = NoiseMode::density_matrix;

  double anchor_for(int n_qubits) const { return anchor_value.value_or(std::ldexp(1.0, -n_qubits)); }

  void validate() const;
  bool operator==(const ZneConfig&) const = default;
};

struct RunConfig {
  std::uint64_t shots = 40000;
  std::uint64_t rng_seed = 0;
  OccupationConvention occupation_convention = OccupationConvention::one_is_occupied;
  /// Exact probabilities instead of finite shots.
  bool analytic = false;
  std::optional<NoiseSpec> noise;
  NoiseMode noise_mode = NoiseMode::trajectory;
  OptimizerConfig optimizer;
  std::optional<ZneConfig> zne;
  /// Also tabulate convergence below 1000 shots.
  bool convergence_include_small = false;

  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

inline constexpr const char* kConfigFormat = "espnor-config-v1";

/// Missing keys take their defaults; present keys are type- and range-checked.
RunConfig parse_config(const std::string& text);
std::string serialize_config(const RunConfig& config);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace espnor

#endif  // ESPNOR_CONFIG_HPP
