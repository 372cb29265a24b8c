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

#ifndef ESPNOR_COMMON_HPP
#define ESPNOR_COMMON_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace espnor {

using cplx = std::complex<double>;

/// Hartree to kcal/mol.
inline constexpr double kHartreeToKcalMol = 627.5094740631;

inline constexpr double kChemicalAccuracyKcalMol = 1.0;

/// Raised for malformed or inconsistent user input (files, flags). The CLI
/// maps these to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file did not match its schema. `field()` names the offending key.
class ParseError : public InputError {
 public:
  ParseError(std::string field, const std::string& what)
      : InputError("parse error in '" + field + "': " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A parsed object violates a numerical identity (orthonormality, trace, symmetry).
class ValidationError : public InputError {
 public:
  ValidationError(std::string identity, double residual, const std::string& what)
      : InputError("validation error [" + identity + "], residual " + std::to_string(residual) +
                   ": " + what),
        identity_(std::move(identity)),
        residual_(residual) {}
  const std::string& identity() const noexcept { return identity_; }
  double residual() const noexcept { return residual_; }

 private:
  std::string identity_;
  double residual_;
};

/// Independent generator for stream `stream` of a run seeded with `seed`.
/// Streams depend only on (seed, stream), never on how work is scheduled.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t sub) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),   static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(sub),    static_cast<std::uint32_t>(sub >> 32)};
  return std::mt19937_64(seq);
}

/// Independent 64-bit seed for a named sub-task of a run.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  auto rng = make_stream(seed, tag, 0xD5EEDULL);
  return rng();
}

/// Uniform double in [0, 1) with 53 random bits; identical on every platform,
/// unlike std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace espnor

#endif  // ESPNOR_COMMON_HPP
