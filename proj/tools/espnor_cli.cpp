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

// espnor command-line tool.
//
//   espnor gen --n-ao 4 --n-act 4 --seed 1 --out inst.json
//   espnor run --instance inst.json [--config cfg.json] [--seed S] [--shots N] [--noise p1,p2] [--out dir]
//   espnor zne --instance inst.json --config cfg.json [--out dir]
//   espnor oracle --instance inst.json
//   espnor transpile --circuit c.txt [--out native.txt]
//   espnor compare report_a.json report_b.json
//
// Exit codes: 0 success, 1 a pipeline stage failed, 2 invalid input.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "espnor/circuit.hpp"
#include "espnor/config.hpp"
#include "espnor/instance.hpp"
#include "espnor/pipeline.hpp"
#include "espnor/transpile.hpp"

namespace fs = std::filesystem;
using namespace espnor;

namespace {

std::string read_text(const std::string& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw InputError("cannot open '" + path + "': not a regular file");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw std::runtime_error("cannot write '" + path.string() + "'");
}

NoiseSpec parse_noise_flag(const std::string& text) {
  if (text == "default") return NoiseSpec{};
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ParseError("--noise", "expected 'p1,p2' or 'default'");
  NoiseSpec s;
  try {
    s.p1 = std::stod(text.substr(0, comma));
    s.p2 = std::stod(text.substr(comma + 1));
  } catch (const std::exception&) {
    throw ParseError("--noise", "expected two numbers");
  }
  s.validate();
  return s;
}

struct Options {
  std::string instance, config, circuit, out, noise;
  std::optional<std::uint64_t> seed, shots;
  bool zne = false;
  bool include_small = false;
  int n_ao = 4, n_act = 4;
  std::uint64_t gen_seed = 0;
  std::string report_a, report_b;
};

RunConfig build_config(const Options& o) {
  RunConfig c = o.config.empty() ? RunConfig{} : load_config(o.config);
  if (o.seed) {
    c.rng_seed = *o.seed;
    if (c.zne) c.zne->rng_seed = *o.seed;
  }
  if (o.shots) c.shots = *o.shots;
  if (!o.noise.empty()) c.noise = parse_noise_flag(o.noise);
  if (o.include_small) c.convergence_include_small = true;
  c.validate();
  return c;
}

void emit(const Options& o, const std::string& report, const std::map<std::string, std::string>& sidecars) {
  if (o.out.empty()) {
    std::cout << report;
    return;
  }
  const fs::path dir(o.out);
  fs::create_directories(dir);
  write_text(dir / "report.json", report);
  for (const auto& [name, text] : sidecars) write_text(dir / name, text);
}

int run_command(const std::string& cmd, const Options& o) {
  if (cmd == "gen") {
    const ProblemInstance inst = [&] {
      try {
        return generate_synthetic_instance(o.n_ao, o.n_act, o.gen_seed);
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
    }();
    if (o.out.empty())
      std::cout << serialize_instance(inst);
    else
      save_instance(inst, o.out);
    return 0;
  }
  if (cmd == "run" || cmd == "zne") {
    const ProblemInstance inst = load_instance(o.instance);
    const RunConfig cfg = build_config(o);
    const PipelineOutput res = (cmd == "zne" || o.zne) ? cmd_zne(inst, cfg) : cmd_run(inst, cfg);
    emit(o, res.report, res.sidecars);
    return 0;
  }
  if (cmd == "oracle") {
    emit(o, cmd_oracle(load_instance(o.instance)), {});
    return 0;
  }
  if (cmd == "transpile") {
    const Circuit c = load_circuit(o.circuit);
    const std::string summary = cmd_transpile(c);
    if (o.out.empty()) {
      std::cout << summary;
    } else {
      save_circuit(compile_to_native(c), o.out);
      std::cout << summary;
    }
    return 0;
  }
  if (cmd == "compare") {
    std::cout << cmd_compare(read_text(o.report_a), read_text(o.report_b));
    return 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"espnor: electrostatic interaction energies from active-space VQE"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "Generate a synthetic dimer instance");
  gen->add_option("--n-ao", o.n_ao, "Number of AO basis functions")->check(CLI::Range(1, 8));
  gen->add_option("--n-act", o.n_act, "Number of active orbitals")->check(CLI::Range(1, 8));
  gen->add_option("--seed", o.gen_seed, "Generator seed");
  gen->add_option("--out", o.out, "Output instance file (stdout if omitted)");

  auto add_pipeline_flags = [&](CLI::App* sub) {
    sub->add_option("--instance", o.instance, "Instance file")->required();
    sub->add_option("--config", o.config, "Run configuration file");
    sub->add_option("--seed", o.seed, "Override the RNG seed");
    sub->add_option("--shots", o.shots, "Override the shot count");
    sub->add_option("--noise", o.noise, "Depolarizing noise as 'p1,p2' or 'default'");
    sub->add_flag("--include-small", o.include_small, "Tabulate convergence below 1000 shots");
    sub->add_option("--out", o.out, "Output directory for report.json and CSV sidecars");
  };
  auto* run = app.add_subcommand("run", "Run the measurement pipeline");
  add_pipeline_flags(run);
  run->add_flag("--zne", o.zne, "Apply zero-noise extrapolation");
  auto* zne = app.add_subcommand("zne", "Run the pipeline with zero-noise extrapolation");
  add_pipeline_flags(zne);

  auto* oracle = app.add_subcommand("oracle", "Exact FCI electrostatics by all routes");
  oracle->add_option("--instance", o.instance, "Instance file")->required();
  oracle->add_option("--out", o.out, "Output directory");

  auto* transpile = app.add_subcommand("transpile", "Compile a circuit to the native gate set");
  transpile->add_option("--circuit", o.circuit, "Circuit file")->required();
  transpile->add_option("--out", o.out, "Write the native circuit here");

  auto* compare = app.add_subcommand("compare", "Difference of two reports");
  compare->add_option("report_a", o.report_a, "Reference report (A)")->required();
  compare->add_option("report_b", o.report_b, "Second report (B)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return run_command(cmd, o);
  } catch (const InputError& e) {
    std::cerr << "espnor: stage 'load': " << e.what() << "\n";
    return 2;
  } catch (const StageError& e) {
    std::cerr << "espnor: stage '" << e.stage() << "': " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "espnor: stage 'report': " << e.what() << "\n";
    return 1;
  }
}
