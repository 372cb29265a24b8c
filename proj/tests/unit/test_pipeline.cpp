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

#include <cmath>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "espnor/common.hpp"
#include "espnor/instance.hpp"
#include "espnor/pipeline.hpp"

namespace espnor {
namespace {

using json = nlohmann::json;

RunConfig quick_config(std::uint64_t seed) {
  RunConfig c;
  c.rng_seed = seed;
  c.shots = 5000;
  c.optimizer.restarts = 2;
  return c;
}

TEST(Pipeline, RunIsDeterministic) {
  const ProblemInstance in = generate_synthetic_instance(3, 2, 1);
  const PipelineOutput a = cmd_run(in, quick_config(7));
  const PipelineOutput b = cmd_run(in, quick_config(7));
  EXPECT_EQ(a.report, b.report);
  EXPECT_EQ(a.sidecars, b.sidecars);
  EXPECT_EQ(a.sidecars.count("trace.csv"), 1u);
  EXPECT_EQ(a.sidecars.count("convergence.csv"), 1u);
  EXPECT_NE(a.report, cmd_run(in, quick_config(8)).report);
}

TEST(Pipeline, NoiselessRunAgreesWithFci) {
  const ProblemInstance in = generate_synthetic_instance(3, 2, 2);
  RunConfig cfg = quick_config(3);
  cfg.analytic = true;
  const json r = json::parse(cmd_run(in, cfg).report);
  EXPECT_EQ(r["format"], kReportFormat);
  EXPECT_EQ(r["command"], "run");
  EXPECT_EQ(r["shot_statistics"]["retention"].get<double>(), 1.0);
  const double shot = r["electrostatics"]["shot_estimate"]["e_elst_hartree"].get<double>();
  const double fci = r["electrostatics"]["fci"]["diagonal"]["e_elst_hartree"].get<double>();
  EXPECT_NEAR(shot, fci, 1e-7);
  EXPECT_NEAR(r["vqe"]["gap_to_fci_hartree"].get<double>(), 0.0, 1e-8);
  EXPECT_TRUE(r["checks"]["within_3_sem_of_fci"].get<bool>());
}

TEST(Pipeline, SingleShotIsFlagged) {
  const ProblemInstance in = generate_synthetic_instance(3, 2, 3);
  RunConfig cfg = quick_config(1);
  cfg.shots = 1;
  const json r = json::parse(cmd_run(in, cfg).report);
  const json& est = r["electrostatics"]["shot_estimate"]["estimate"];
  EXPECT_TRUE(est["insufficient_statistics"].get<bool>());
  EXPECT_EQ(est["sem_hartree"].get<double>(), 0.0);
}

TEST(Pipeline, CompareIdenticalReports) {
  const ProblemInstance in = generate_synthetic_instance(3, 2, 4);
  const std::string report = cmd_run(in, quick_config(5)).report;
  const json c = json::parse(cmd_compare(report, report));
  const double sem_a = json::parse(report)["electrostatics"]["shot_estimate"]["estimate"]["sem_hartree"].get<double>();
  EXPECT_EQ(c["format"], "espnor-compare-v1");
  EXPECT_EQ(c["delta_e_hartree"].get<double>(), 0.0);
  EXPECT_EQ(c["sign"], "zero");
  EXPECT_NEAR(c["sem_hartree"].get<double>(), std::sqrt(2.0) * sem_a, 1e-15);
  EXPECT_EQ(c["fci_delta_e_hartree"].get<double>(), 0.0);
  EXPECT_TRUE(c["within_chemical_accuracy"].get<bool>());
}

TEST(Pipeline, CompareOracleReports) {
  const ProblemInstance a = generate_synthetic_instance(4, 2, 1);
  const ProblemInstance b = generate_synthetic_instance(4, 2, 2);
  const std::string ra = cmd_oracle(a), rb = cmd_oracle(b);
  const double ea = json::parse(ra)["fci"]["diagonal"]["e_elst_hartree"].get<double>();
  const double eb = json::parse(rb)["fci"]["diagonal"]["e_elst_hartree"].get<double>();
  const json c = json::parse(cmd_compare(ra, rb));
  EXPECT_NEAR(c["delta_e_hartree"].get<double>(), eb - ea, 1e-15);
  EXPECT_EQ(c["sem_hartree"].get<double>(), 0.0);
  EXPECT_TRUE(c["sign_matches_fci"].get<bool>());
  EXPECT_EQ(c["deviation_from_fci_kcalmol"].get<double>(), 0.0);
}

TEST(Pipeline, CompareRejectsForeignDocuments) {
  const std::string oracle = cmd_oracle(generate_synthetic_instance(3, 2, 1));
  try {
    cmd_compare(R"({"format": "something-else"})", oracle);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "report_a.format");
  }
  EXPECT_THROW(cmd_compare(oracle, "{"), ParseError);
  json other = json::parse(oracle);
  other["units"]["energy"] = "eV";
  EXPECT_THROW(cmd_compare(oracle, other.dump()), InputError);
}

TEST(Pipeline, ZneWithoutNoiseRecoversTheNoiselessValue) {
  const ProblemInstance in = generate_synthetic_instance(3, 2, 5);
  RunConfig cfg = quick_config(2);
  cfg.noise = NoiseSpec{0.0, 0.0};
  ZneConfig z;
  z.trajectories_per_lambda = 0;
  cfg.zne = z;
  const json r = json::parse(cmd_zne(in, cfg).report);
  const json& zr = r["zne"];
  EXPECT_EQ(zr["mode"], "exact");
  const double ref = zr["noiseless_reference"]["e_elst_hartree"].get<double>();
  EXPECT_NEAR(zr["mitigated"]["mean_hartree"].get<double>(), ref, 1e-6);
  EXPECT_NEAR(zr["unmitigated"]["mean_hartree"].get<double>(), ref, 1e-12);
  EXPECT_EQ(r["electrostatics"]["shot_estimate"]["route"], "zne_mitigated");
}

TEST(Pipeline, ZneRequiresNoise) {
  EXPECT_THROW(cmd_zne(generate_synthetic_instance(3, 2, 1), quick_config(1)), InputError);
}

TEST(Pipeline, TranspileReport) {
  Circuit c(4);
  c.add(Gate::px(0, 1, 2, 3, 0.4)).add(Gate::g(0, 1, 0.2));
  const json r = json::parse(cmd_transpile(c));
  EXPECT_EQ(r["format"], "espnor-transpile-v1");
  EXPECT_EQ(r["source"]["gates"].get<std::size_t>(), 2u);
  EXPECT_LT(r["phase_insensitive_distance"].get<double>(), 1e-9);
}

}  // namespace
}  // namespace espnor
