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

#ifndef ESPNOR_PIPELINE_HPP
#define ESPNOR_PIPELINE_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "espnor/ansatz.hpp"
#include "espnor/config.hpp"
#include "espnor/electrostatics.hpp"
#include "espnor/fci.hpp"
#include "espnor/instance.hpp"
#include "espnor/vqe.hpp"

namespace espnor {

/// A pipeline stage failed for a reason other than bad input (exit code 1).
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error("stage '" + stage + "' failed: " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// Everything up to (but excluding) measurement: Hamiltonian, optimized
/// ansatz, ESP natural basis and the merged measurement circuit.
struct PreparedPipeline {
  QubitLayout layout;
  PauliSum hamiltonian;
  QnpAnsatz ansatz;
  VqeResult vqe;
  EspMatrix esp;
  EspNaturalBasis basis;
  double core_term = 0.0;
  Circuit merged;
  /// Noiseless state prepared by `merged`.
  StateVector state;
  /// FCI reference when the active space has at most 6 orbitals.
  std::optional<ExactElectrostatics> fci;
};

PreparedPipeline prepare_pipeline(const ProblemInstance& instance, const RunConfig& config);

/// Report document plus CSV sidecars keyed by file suffix.
struct PipelineOutput {
  std::string report;
  std::map<std::string, std::string> sidecars;
};

inline constexpr const char* kReportFormat = "espnor-report-v1";

/// load -> Hamiltonian -> VQE -> ESP basis -> merge -> sample -> postselect
/// -> estimate. Noise from the config is applied to the native circuit.
PipelineOutput cmd_run(const ProblemInstance& instance, const RunConfig& config);

/// Noisy sampling at every ZNE scale factor, extrapolation and mitigated
/// estimate next to the unmitigated and noiseless ones. Requires config.noise.
PipelineOutput cmd_zne(const ProblemInstance& instance, const RunConfig& config);

/// Delta E = E(B) - E(A) of two reports with quadrature-combined sem and a
/// chemical-accuracy verdict.
std::string cmd_compare(const std::string& report_a, const std::string& report_b);

/// FCI energies and all exact electrostatics routes.
std::string cmd_oracle(const ProblemInstance& instance);

/// Gate counts of a circuit before and after native compilation.
std::string cmd_transpile(const Circuit& circuit);

}  // namespace espnor

#endif  // ESPNOR_PIPELINE_HPP
