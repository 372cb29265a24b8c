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

#include "espnor/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace espnor {

using json = nlohmann::ordered_json;

namespace {

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ParseError(where, "expected an object");
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || item.key() == a;
    if (!ok) throw ParseError(where.empty() ? item.key() : where + "." + item.key(), "unknown key");
  }
}

std::string join(const std::string& where, const char* key) { return where.empty() ? key : where + "." + key; }

template <class T>
void read(const json& j, const std::string& where, const char* key, T& out) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  const std::string field = join(where, key);
  if constexpr (std::is_same_v<T, bool>) {
    if (!v.is_boolean()) throw ParseError(field, "expected a boolean");
    out = v.get<bool>();
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) throw ParseError(field, "expected an integer");
    if (std::is_unsigned_v<T> && v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)
      throw ParseError(field, "expected a non-negative integer");
    out = v.get<T>();
  } else {
    if (!v.is_number()) throw ParseError(field, "expected a number");
    out = v.get<double>();
  }
}

}  // namespace

void OptimizerConfig::validate() const {
  if (max_iterations < 0) throw ValidationError("optimizer.max_iterations >= 0", max_iterations, "negative");
  if (!(gradient_tolerance > 0)) throw ValidationError("optimizer.gradient_tolerance > 0", gradient_tolerance, "");
  if (restarts < 1) throw ValidationError("optimizer.restarts >= 1", restarts, "at least one start required");
  if (!(initial_parameter_scale >= 0))
    throw ValidationError("optimizer.initial_parameter_scale >= 0", initial_parameter_scale, "");
  if (!(finite_difference_step > 0))
    throw ValidationError("optimizer.finite_difference_step > 0", finite_difference_step, "");
}

void ZneConfig::validate() const {
  if (lambdas.empty() || lambdas.front() != 1.0)
    throw ValidationError("zne.lambdas contains 1", 0.0, "scale factors must start at 1");
  for (std::size_t i = 1; i < lambdas.size(); ++i)
    if (!(lambdas[i] > lambdas[i - 1]))
      throw ValidationError("zne.lambdas ascending", lambdas[i - 1] - lambdas[i], "scale factors must increase");
  if (!(anchor_lambda > lambdas.back()))
    throw ValidationError("zne.anchor_lambda > max lambda", anchor_lambda, "anchor must lie beyond the data");
  if (anchor_value && !(*anchor_value >= 0 && *anchor_value <= 1))
    throw ValidationError("zne.anchor_value in [0,1]", *anchor_value, "");
}

void RunConfig::validate() const {
  if (shots < 1) throw ValidationError("shots >= 1", 0.0, "at least one shot required");
  optimizer.validate();
  if (noise) noise->validate();
  if (zne) zne->validate();
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("document", e.what());
  }
  check_keys(j, "",
             {"format", "shots", "rng_seed", "occupation_convention", "analytic", "noise", "optimizer", "zne",
              "convergence"});
  if (!j.contains("format") || j["format"] != kConfigFormat)
    throw ParseError("format", std::string("expected '") + kConfigFormat + "'");
  RunConfig c;
  read(j, "", "shots", c.shots);
  read(j, "", "rng_seed", c.rng_seed);
  read(j, "", "analytic", c.analytic);
  if (j.contains("occupation_convention")) {
    if (!j["occupation_convention"].is_string()) throw ParseError("occupation_convention", "expected a string");
    try {
      c.occupation_convention = parse_occupation_convention(j["occupation_convention"].get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError("occupation_convention", e.what());
    }
  }
  if (j.contains("noise") && !j["noise"].is_null()) {
    const json& n = j["noise"];
    check_keys(n, "noise", {"p1", "p2", "mode"});
    NoiseSpec spec;
    read(n, "noise", "p1", spec.p1);
    read(n, "noise", "p2", spec.p2);
    if (n.contains("mode")) {
      if (!n["mode"].is_string()) throw ParseError("noise.mode", "expected a string");
      try {
        c.noise_mode = parse_noise_mode(n["mode"].get<std::string>());
      } catch (const InputError& e) {
        throw ParseError("noise.mode", e.what());
      }
    }
    c.noise = spec;
  }
  if (j.contains("optimizer")) {
    const json& o = j["optimizer"];
    check_keys(o, "optimizer",
               {"max_iterations", "gradient_tolerance", "restarts", "initial_parameter_scale",
                "finite_difference_step"});
    read(o, "optimizer", "max_iterations", c.optimizer.max_iterations);
    read(o, "optimizer", "gradient_tolerance", c.optimizer.gradient_tolerance);
    read(o, "optimizer", "restarts", c.optimizer.restarts);
    read(o, "optimizer", "initial_parameter_scale", c.optimizer.initial_parameter_scale);
    read(o, "optimizer", "finite_difference_step", c.optimizer.finite_difference_step);
  }
  if (j.contains("zne") && !j["zne"].is_null()) {
    const json& z = j["zne"];
    check_keys(z, "zne", {"lambdas", "anchor_lambda", "anchor_value", "trajectories_per_lambda", "rng_seed", "mode"});
    ZneConfig zc;
    if (z.contains("lambdas")) {
      if (!z["lambdas"].is_array()) throw ParseError("zne.lambdas", "expected an array of numbers");
      zc.lambdas.clear();
      for (const auto& v : z["lambdas"]) {
        if (!v.is_number()) throw ParseError("zne.lambdas", "expected an array of numbers");
        zc.lambdas.push_back(v.get<double>());
      }
    }
    read(z, "zne", "anchor_lambda", zc.anchor_lambda);
    if (z.contains("anchor_value") && !z["anchor_value"].is_null()) {
      double v = 0;
      read(z, "zne", "anchor_value", v);
      zc.anchor_value = v;
    }
    read(z, "zne", "trajectories_per_lambda", zc.trajectories_per_lambda);
    zc.rng_seed = c.rng_seed;
    read(z, "zne", "rng_seed", zc.rng_seed);
    if (z.contains("mode")) {
      if (!z["mode"].is_string()) throw ParseError("zne.mode", "expected a string");
      try {
        zc.mode = parse_noise_mode(z["mode"].get<std::string>());
      } catch (const InputError& e) {
        throw ParseError("zne.mode", e.what());
      }
    }
    c.zne = zc;
  }
  if (j.contains("convergence")) {
    const json& cv = j["convergence"];
    check_keys(cv, "convergence", {"include_small"});
    read(cv, "convergence", "include_small", c.convergence_include_small);
  }
  c.validate();
  return c;
}

std::string serialize_config(const RunConfig& c) {
  json j;
  j["format"] = kConfigFormat;
  j["shots"] = c.shots;
  j["rng_seed"] = c.rng_seed;
  j["occupation_convention"] = std::string(to_string(c.occupation_convention));
  j["analytic"] = c.analytic;
  if (c.noise)
    j["noise"] = {{"p1", c.noise->p1}, {"p2", c.noise->p2}, {"mode", std::string(to_string(c.noise_mode))}};
  j["optimizer"] = {{"max_iterations", c.optimizer.max_iterations},
                    {"gradient_tolerance", c.optimizer.gradient_tolerance},
                    {"restarts", c.optimizer.restarts},
                    {"initial_parameter_scale", c.optimizer.initial_parameter_scale},
                    {"finite_difference_step", c.optimizer.finite_difference_step}};
  if (c.zne) {
    json z;
    z["lambdas"] = c.zne->lambdas;
    z["anchor_lambda"] = c.zne->anchor_lambda;
    if (c.zne->anchor_value) z["anchor_value"] = *c.zne->anchor_value;
    z["trajectories_per_lambda"] = c.zne->trajectories_per_lambda;
    z["rng_seed"] = c.zne->rng_seed;
    z["mode"] = std::string(to_string(c.zne->mode));
    j["zne"] = std::move(z);
  }
  j["convergence"] = {{"include_small", c.convergence_include_small}};
  return j.dump(2) + "\n";
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace espnor
