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

#ifndef ESPNOR_VQE_HPP
#define ESPNOR_VQE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "espnor/ansatz.hpp"
#include "espnor/config.hpp"
#include "espnor/pauli.hpp"

namespace espnor {

struct TracePoint {
  int iteration = 0;
  double energy = 0.0;
};

struct VqeResult {
  std::vector<double> theta;
  double energy = 0.0;
  /// Max-norm of the finite-difference gradient at theta.
  double gradient_max_norm = 0.0;
  bool converged = false;
  int iterations = 0;
  int best_restart = 0;
  std::vector<double> restart_energies;
  /// (iteration, energy) of the winning restart.
  std::vector<TracePoint> trace;
  std::string status;
};

/// Energy <psi(theta)|H|psi(theta)>.
double ansatz_energy(const PauliSum& h, const QnpAnsatz& ansatz, std::span<const double> theta);

/// Central-difference gradient with step `step`.
std::vector<double> ansatz_gradient(const PauliSum& h, const QnpAnsatz& ansatz, std::span<const double> theta,
                                    double step);

/// Quasi-Newton (L-BFGS) minimization from `restarts` starts: restart 0 at
/// theta = 0 (the reference determinant), restart k >= 1 at
/// Normal(0, initial_parameter_scale) drawn from stream (seed, k). The lowest
/// energy wins; ties go to the lower restart index.
VqeResult optimize(const PauliSum& h, const QnpAnsatz& ansatz, const OptimizerConfig& config, std::uint64_t seed);

/// Writes "iteration,energy_hartree" rows.
std::string trace_csv(const std::vector<TracePoint>& trace);

}  // namespace espnor

#endif  // ESPNOR_VQE_HPP
