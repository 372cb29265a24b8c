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

#include <gtest/gtest.h>

#include "espnor/common.hpp"
#include "espnor/config.hpp"

namespace espnor {
namespace {

TEST(Config, EmptyDocumentTakesDefaults) {
  const RunConfig c = parse_config(R"({"format": "espnor-config-v1"})");
  EXPECT_EQ(c, RunConfig{});
  EXPECT_EQ(c.shots, 40000u);
  EXPECT_FALSE(c.noise.has_value());
  EXPECT_EQ(c.optimizer.restarts, 5);
}

TEST(Config, RoundTrip) {
  RunConfig c;
  c.shots = 1234;
  c.rng_seed = 99;
  c.occupation_convention = OccupationConvention::zero_is_occupied;
  c.analytic = true;
  c.noise = NoiseSpec{1e-3, 2e-2};
  c.noise_mode = NoiseMode::density_matrix;
  c.optimizer.restarts = 2;
  c.optimizer.gradient_tolerance = 1e-9;
  ZneConfig z;
  z.lambdas = {1.0, 1.5, 2.5};
  z.anchor_value = 0.01;
  z.trajectories_per_lambda = 0;
  z.rng_seed = 4;
  c.zne = z;
  c.convergence_include_small = true;
  EXPECT_EQ(parse_config(serialize_config(c)), c);
}

TEST(Config, ZneSeedFollowsTheRunSeed) {
  const RunConfig c = parse_config(R"({"format": "espnor-config-v1", "rng_seed": 12, "zne": {}})");
  ASSERT_TRUE(c.zne.has_value());
  EXPECT_EQ(c.zne->rng_seed, 12u);
}

TEST(Config, ParseErrorsNameTheField) {
  auto field_of = [](const char* text) -> std::string {
    try {
      parse_config(text);
    } catch (const ParseError& e) {
      return e.field();
    }
    return "<none>";
  };
  EXPECT_EQ(field_of(R"({"shots": 5})"), "format");
  EXPECT_EQ(field_of("not json"), "document");
  EXPECT_EQ(field_of(R"({"format": "espnor-config-v1", "shots": "many"})"), "shots");
  EXPECT_EQ(field_of(R"({"format": "espnor-config-v1", "shots": -4})"), "shots");
  EXPECT_EQ(field_of(R"({"format": "espnor-config-v1", "colour": 1})"), "colour");
  EXPECT_EQ(field_of(R"({"format": "espnor-config-v1", "noise": {"p3": 0}})"), "noise.p3");
  EXPECT_EQ(field_of(R"({"format": "espnor-config-v1", "noise": {"mode": "fast"}})"), "noise.mode");
  EXPECT_EQ(field_of(R"({"format": "espnor-config-v1", "occupation_convention": "up"})"), "occupation_convention");
  EXPECT_EQ(field_of(R"({"format": "espnor-config-v1", "zne": {"lambdas": [1, "x"]}})"), "zne.lambdas");
}

TEST(Config, RangeChecks) {
  EXPECT_THROW(parse_config(R"({"format": "espnor-config-v1", "shots": 0})"), ValidationError);
  EXPECT_THROW(parse_config(R"({"format": "espnor-config-v1", "noise": {"p1": 1.5}})"), InputError);
  EXPECT_THROW(parse_config(R"({"format": "espnor-config-v1", "optimizer": {"restarts": 0}})"), ValidationError);
  EXPECT_THROW(parse_config(R"({"format": "espnor-config-v1", "zne": {"lambdas": [2, 3]}})"), ValidationError);
  EXPECT_THROW(parse_config(R"({"format": "espnor-config-v1", "zne": {"lambdas": [1, 3, 2]}})"), ValidationError);
  EXPECT_THROW(parse_config(R"({"format": "espnor-config-v1", "zne": {"anchor_lambda": 2}})"), ValidationError);
  EXPECT_THROW(load_config("/nonexistent/espnor.json"), InputError);
}

}  // namespace
}  // namespace espnor
