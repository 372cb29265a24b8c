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

#ifndef ESPNOR_BITSTRING_HPP
#define ESPNOR_BITSTRING_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace espnor {

// Basis-state convention used throughout: qubit k is bit k of the integer
// index, and character k (leftmost = 0) of a bitstring.

inline std::string to_bitstring(std::uint64_t index, int n_qubits) {
  std::string s(static_cast<std::size_t>(n_qubits), '0');
  for (int k = 0; k < n_qubits; ++k)
    if ((index >> k) & 1ULL) s[static_cast<std::size_t>(k)] = '1';
  return s;
}

inline std::uint64_t from_bitstring(std::string_view bits) {
  if (bits.size() > 63) throw std::invalid_argument("bitstring longer than 63 qubits");
  std::uint64_t index = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] == '1')
      index |= 1ULL << k;
    else if (bits[k] != '0')
      throw std::invalid_argument("bitstring may contain only '0' and '1'");
  }
  return index;
}

inline int popcount(std::uint64_t v) noexcept { return std::popcount(v); }

inline std::uint64_t low_mask(int n) noexcept { return n >= 64 ? ~0ULL : ((1ULL << n) - 1ULL); }

}  // namespace espnor

#endif  // ESPNOR_BITSTRING_HPP
