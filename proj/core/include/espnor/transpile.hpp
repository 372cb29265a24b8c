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

#ifndef ESPNOR_TRANSPILE_HPP
#define ESPNOR_TRANSPILE_HPP

#include <cstddef>
#include <map>
#include <string>

#include "espnor/circuit.hpp"

namespace espnor {

struct GateCounts {
  std::size_t single_qubit = 0;
  std::size_t two_qubit = 0;
  std::size_t multi_qubit = 0;  // PX before compilation
  std::map<std::string, std::size_t> by_kind;

  std::size_t total() const noexcept { return single_qubit + two_qubit + multi_qubit; }
};

GateCounts count_gates(const Circuit& circuit);

/// Rewrites every gate into RX / RZ / RXX. The result equals the input
/// unitary up to a global phase. A peephole pass then fuses neighbouring
/// same-axis rotations and removes identities. Circuits that are already
/// native are returned unchanged.
Circuit compile_to_native(const Circuit& circuit);

/// Fuses consecutive RX/RX, RZ/RZ and RXX/RXX rotations on the same operands
/// and drops rotations that reduce to the identity (up to phase).
Circuit peephole(const Circuit& native);

}  // namespace espnor

#endif  // ESPNOR_TRANSPILE_HPP
