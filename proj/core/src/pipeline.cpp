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

#include "espnor/pipeline.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

#include "espnor/bitstring.hpp"
#include "espnor/estimator.hpp"
#include "espnor/jordan_wigner.hpp"
#include "espnor/noise.hpp"
#include "espnor/sampling.hpp"
#include "espnor/transpile.hpp"
#include "espnor/zne.hpp"

namespace espnor {

using json = nlohmann::ordered_json;

namespace {

// Seed tags of the independent random sub-tasks of one run.
constexpr std::uint64_t kSampleTag = 1;
constexpr std::uint64_t kZneTag = 2;

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError&) {
    throw;
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

// JSON has no infinity; non-finite numbers become null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json energy_json(const ElectrostaticsResult& r) {
  json j;
  j["route"] = r.route;
  j["e_elst_hartree"] = r.e_elst;
  j["e_elst_kcalmol"] = r.e_elst_kcal();
  j["core_term_hartree"] = r.core_term;
  j["active_term_hartree"] = r.active_term;
  if (!r.terms.empty()) {
    json t;
    for (const auto& [k, v] : r.terms) t[k + "_hartree"] = v;
    j["terms"] = std::move(t);
  }
  return j;
}

json estimate_json(const EnergyEstimate& e, std::uint64_t seed) {
  json j;
  j["mean_hartree"] = e.mean;
  j["mean_kcalmol"] = e.mean * kHartreeToKcalMol;
  j["sem_hartree"] = number(e.sem);
  j["sem_kcalmol"] = number(e.sem * kHartreeToKcalMol);
  j["n_samples_used"] = e.n_samples_used;
  j["total_shots"] = e.total_shots;
  j["seed"] = seed;
  j["insufficient_statistics"] = e.insufficient_statistics;
  j["min_sample_kcalmol"] = number(e.min_sample * kHartreeToKcalMol);
  j["max_sample_kcalmol"] = number(e.max_sample * kHartreeToKcalMol);
  return j;
}

json sparse_distribution(const Distribution& p, int n_qubits) {
  json j = json::object();
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0) j[to_bitstring(i, n_qubits)] = p[i];
  return j;
}

json header(const char* command, const ProblemInstance& instance, const RunConfig& config) {
  json j;
  j["format"] = kReportFormat;
  j["command"] = command;
  j["instance_digest"] = instance_digest(instance);
  j["units"] = {{"energy", "hartree"}, {"energy_report", "kcal/mol"}, {"kcal_per_hartree", kHartreeToKcalMol}};
  j["seed"] = config.rng_seed;
  j["shots"] = config.shots;
  j["occupation_convention"] = std::string(to_string(config.occupation_convention));
  j["active_space"] = {{"n_orbitals", instance.n_act()},
                       {"n_alpha", instance.active.n_alpha},
                       {"n_beta", instance.active.n_beta},
                       {"n_core", instance.active.core_mo.size()}};
  return j;
}

json vqe_json(const PreparedPipeline& p) {
  json j;
  j["energy_hartree"] = p.vqe.energy;
  j["iterations"] = p.vqe.iterations;
  j["converged"] = p.vqe.converged;
  j["gradient_max_norm"] = p.vqe.gradient_max_norm;
  j["best_restart"] = p.vqe.best_restart;
  j["restart_energies_hartree"] = p.vqe.restart_energies;
  j["theta"] = p.vqe.theta;
  j["status"] = p.vqe.status;
  if (p.fci) {
    j["fci_energy_hartree"] = p.fci->solution.E0;
    j["gap_to_fci_hartree"] = p.vqe.energy - p.fci->solution.E0;
  }
  return j;
}

json fci_json(const ExactElectrostatics& f) {
  json j;
  j["energy_hartree"] = f.solution.E0;
  j["ao_direct"] = energy_json(f.ao_direct);
  j["mo_contraction"] = energy_json(f.mo_contraction);
  j["diagonal"] = energy_json(f.diagonal);
  j["gamma_bar_diag"] = vector_json(f.gamma_bar_diag);
  j["route_discrepancy_hartree"] = f.route_discrepancy;
  return j;
}

json circuit_json(const Circuit& merged, const Circuit& native) {
  const GateCounts src = count_gates(merged);
  const GateCounts nat = count_gates(native);
  json j;
  j["gates"] = merged.size();
  j["by_kind"] = src.by_kind;
  j["native_single_qubit"] = nat.single_qubit;
  j["native_two_qubit"] = nat.two_qubit;
  return j;
}

}  // namespace

PreparedPipeline prepare_pipeline(const ProblemInstance& instance, const RunConfig& config) {
  config.validate();
  const QubitLayout layout{instance.n_act(), config.occupation_convention};
  const int na = instance.active.n_alpha, nb = instance.active.n_beta;
  PauliSum h = stage("hamiltonian",
                     [&] { return jw_hamiltonian(instance.h_act, instance.g_act, instance.E_core, layout); });
  QnpAnsatz ansatz = stage("vqe", [&] { return build_ansatz(layout, na, nb); });
  VqeResult vqe = stage("vqe", [&] { return optimize(h, ansatz, config.optimizer, config.rng_seed); });
  EspMatrix esp = stage("esp_basis", [&] { return build_esp_matrix(instance); });
  EspNaturalBasis basis = stage("esp_basis", [&] { return esp_natural_basis(esp.J_mo, instance.active); });
  const double core_term = 2.0 * core_diagonal(esp.J_mo, instance.active).sum();
  Circuit merged = stage("merge", [&] { return merge_measurement_rotation(ansatz, vqe.theta, basis.U); });
  StateVector state = stage("merge", [&] { return apply_circuit(merged, StateVector(layout.n_qubits())); });
  std::optional<ExactElectrostatics> fci;
  if (instance.n_act() <= 6) fci = stage("oracle", [&] { return exact_electrostatics(instance); });
  return PreparedPipeline{layout, std::move(h), std::move(ansatz), std::move(vqe), std::move(esp), std::move(basis),
                          core_term, std::move(merged), std::move(state), std::move(fci)};
}

PipelineOutput cmd_run(const ProblemInstance& instance, const RunConfig& config) {
  const PreparedPipeline p = prepare_pipeline(instance, config);
  const int na = instance.active.n_alpha, nb = instance.active.n_beta;
  const Eigen::VectorXd core_diag = core_diagonal(p.esp.J_mo, instance.active);
  const std::uint64_t sample_seed = derive_seed(config.rng_seed, kSampleTag);
  const Circuit native = stage("transpile", [&] { return compile_to_native(p.merged); });
  const Distribution exact_p = analytic_distribution(p.state);

  json report = header("run", instance, config);
  report["vqe"] = vqe_json(p);
  report["esp_basis"] = {{"w_hartree", vector_json(p.basis.w)}, {"U", matrix_json(p.basis.U.matrix())}};
  report["circuit"] = circuit_json(p.merged, native);
  report["sampling"] = {{"mode", config.analytic ? "analytic" : "shots"},
                        {"noise", config.noise ? json{{"p1", config.noise->p1},
                                                      {"p2", config.noise->p2},
                                                      {"mode", std::string(to_string(config.noise_mode))}}
                                               : json(nullptr)},
                        {"seed", sample_seed}};

  PipelineOutput out;
  const Eigen::MatrixXd hbar = p.basis.U.matrix().transpose() * instance.h_act * p.basis.U.matrix();
  EnergyEstimate shot_est, proxy_est;
  Eigen::VectorXd gamma_bar;
  double retention = 0.0;
  Distribution measured;
  json stats;
  if (config.analytic) {
    measured = config.noise ? stage("sample", [&] { return noisy_distribution(native, *config.noise); }) : exact_p;
    const auto post = stage("postselect", [&] { return postselect(measured, p.layout, na, nb); });
    if (!(post.retention > 0)) throw StageError("postselect", "no probability mass in the target sector");
    retention = post.retention;
    gamma_bar = diag_rdm_from_distribution(post.kept, p.layout);
    shot_est = estimate_from_distribution(post.kept, p.layout, p.basis.w, p.core_term, config.shots);
    proxy_est = estimate_from_distribution(post.kept, p.layout, hbar.diagonal(), 0.0, config.shots);
    stats["retention"] = retention;
  } else {
    const auto stream = stage("sample", [&] {
      return config.noise ? simulate_noisy_shots(native, *config.noise, config.shots, sample_seed, config.noise_mode)
                          : sample_shots(exact_p, config.shots, sample_seed);
    });
    measured = to_distribution(BitstringCounts::from_shots(p.layout.n_qubits(), stream));
    const auto kept_stream = postselect_stream(stream, p.layout, na, nb);
    const auto kept = BitstringCounts::from_shots(p.layout.n_qubits(), kept_stream);
    if (kept.total_shots == 0) throw StageError("postselect", "every shot was discarded");
    retention = static_cast<double>(kept.total_shots) / static_cast<double>(stream.size());
    gamma_bar = diag_rdm_from_counts(kept, p.layout);
    shot_est = stage("estimate", [&] { return estimate_with_sem(kept, p.layout, p.basis.w, p.core_term); });
    proxy_est = linear_occupation_estimate(kept, p.layout, hbar.diagonal(), 0.0);
    const auto grid = default_convergence_grid(kept.total_shots, config.convergence_include_small);
    const auto curve = convergence_curve(kept_stream, p.layout, p.basis.w, p.core_term, grid);
    json table = json::array();
    for (const auto& [n, e] : curve)
      table.push_back({n, e.mean * kHartreeToKcalMol, number(e.sem * kHartreeToKcalMol)});
    stats["retention"] = retention;
    stats["kept"] = kept.total_shots;
    stats["discarded"] = stream.size() - kept.total_shots;
    stats["convergence_kcalmol"] = std::move(table);
    out.sidecars["convergence.csv"] = convergence_csv(curve);
  }
  stats["gamma_bar_diag"] = vector_json(gamma_bar);
  stats["insufficient_statistics"] = shot_est.insufficient_statistics;
  report["shot_statistics"] = std::move(stats);

  const ElectrostaticsResult diag =
      electrostatics_from_diag_rdm(p.basis.w, gamma_bar.cwiseMax(0.0).cwiseMin(2.0), core_diag);
  json elst;
  elst["shot_estimate"] = energy_json(diag);
  elst["shot_estimate"]["estimate"] = estimate_json(shot_est, sample_seed);
  const auto noiseless = postselect(exact_p, p.layout, na, nb);
  elst["vqe_exact"] = energy_json(electrostatics_from_diag_rdm(
      p.basis.w, diag_rdm_from_distribution(noiseless.kept, p.layout), core_diag));
  if (p.fci) elst["fci"] = fci_json(*p.fci);
  report["electrostatics"] = std::move(elst);

  json proxy = estimate_json(proxy_est, sample_seed);
  proxy["h_bar_diag_hartree"] = vector_json(hbar.diagonal());
  report["one_body_diag_proxy"] = std::move(proxy);
  report["overlaps"] = {{"bhattacharyya_noiseless_measured", bhattacharyya(exact_p, measured)}};
  if (p.fci) {
    const double diff = std::abs(shot_est.mean - p.fci->diagonal.e_elst);
    report["checks"] = {{"abs_error_vs_fci_hartree", diff},
                        {"within_3_sem_of_fci", !shot_est.insufficient_statistics && diff < 3 * shot_est.sem}};
  }
  out.report = report.dump(2) + "\n";
  out.sidecars["trace.csv"] = trace_csv(p.vqe.trace);
  return out;
}

PipelineOutput cmd_zne(const ProblemInstance& instance, const RunConfig& config) {
  if (!config.noise) throw InputError("zne requires a noise model (config 'noise' or --noise)");
  const ZneConfig zcfg = [&] {
    ZneConfig z = config.zne.value_or(ZneConfig{});
    if (!config.zne) z.rng_seed = config.rng_seed;
    return z;
  }();
  const PreparedPipeline p = prepare_pipeline(instance, config);
  const int na = instance.active.n_alpha, nb = instance.active.n_beta;
  const int nq = p.layout.n_qubits();
  const Eigen::VectorXd core_diag = core_diagonal(p.esp.J_mo, instance.active);
  const Circuit native = stage("transpile", [&] { return compile_to_native(p.merged); });
  const Distribution exact_p = analytic_distribution(p.state);

  ZneConfig run_cfg = zcfg;
  run_cfg.rng_seed = derive_seed(zcfg.rng_seed, kZneTag);
  const ZneMeasurement meas = stage("zne", [&] { return zne_measure(native, *config.noise, run_cfg); });
  const ZneExtrapolation ext = stage("zne", [&] { return zne_extrapolate_frequencies(meas.distributions, zcfg, nq); });
  const std::uint64_t nominal = zcfg.trajectories_per_lambda ? zcfg.trajectories_per_lambda : config.shots;

  const auto noisy_post = postselect(meas.distributions.front(), p.layout, na, nb);
  if (!(noisy_post.retention > 0)) throw StageError("postselect", "no measured mass in the target sector");
  const std::uint64_t kept_shots =
      static_cast<std::uint64_t>(std::llround(noisy_post.retention * static_cast<double>(nominal)));
  const EnergyEstimate unmitigated =
      estimate_from_distribution(noisy_post.kept, p.layout, p.basis.w, p.core_term,
                                 std::max<std::uint64_t>(kept_shots, 1));
  const EnergyEstimate mitigated = stage("zne", [&] {
    return mitigated_electrostatics(ext.distribution, ext.sigma, p.layout, na, nb, p.basis.w, p.core_term);
  });
  const auto noiseless = postselect(exact_p, p.layout, na, nb);
  const ElectrostaticsResult reference =
      electrostatics_from_diag_rdm(p.basis.w, diag_rdm_from_distribution(noiseless.kept, p.layout), core_diag);

  json report = header("zne", instance, config);
  report["vqe"] = vqe_json(p);
  report["circuit"] = circuit_json(p.merged, native);
  json z;
  z["noise"] = {{"p1", config.noise->p1}, {"p2", config.noise->p2}};
  z["lambdas"] = meas.lambdas;
  z["folded_gate_counts"] = meas.gate_counts;
  z["anchor"] = {{"lambda", zcfg.anchor_lambda}, {"value", zcfg.anchor_for(nq)}};
  z["trajectories_per_lambda"] = zcfg.trajectories_per_lambda;
  z["mode"] = zcfg.trajectories_per_lambda ? std::string(to_string(zcfg.mode)) : std::string("exact");
  z["seed"] = run_cfg.rng_seed;
  json per_lambda = json::array();
  for (std::size_t k = 0; k < meas.lambdas.size(); ++k)
    per_lambda.push_back(
        {{"lambda", meas.lambdas[k]}, {"distribution", sparse_distribution(meas.distributions[k], nq)}});
  z["measured"] = std::move(per_lambda);
  json fits = json::object();
  for (std::size_t s = 0; s < ext.fits.size(); ++s) {
    if (p.layout.count_alpha(s) != na || p.layout.count_beta(s) != nb) continue;
    const ZneFit& f = ext.fits[s];
    fits[to_bitstring(s, nq)] = {{"a", f.a},       {"b", f.b},
                                 {"c", f.c},       {"sigma_a", number(f.sigma_a)},
                                 {"sigma_b", number(f.sigma_b)}, {"ok", f.ok},
                                 {"constant", f.constant}, {"extrapolated", ext.distribution[s]},
                                 {"sigma", number(ext.sigma[s])}};
  }
  z["fits"] = std::move(fits);
  z["failed_fits"] = ext.failed_fits;
  z["extrapolated_distribution"] = sparse_distribution(ext.distribution, nq);
  z["unmitigated"] = estimate_json(unmitigated, run_cfg.rng_seed);
  z["mitigated"] = estimate_json(mitigated, run_cfg.rng_seed);
  z["retention_lambda1"] = noisy_post.retention;
  z["noiseless_reference"] = energy_json(reference);
  z["overlaps"] = {{"bhattacharyya_noiseless_noisy", bhattacharyya(exact_p, meas.distributions.front())},
                   {"bhattacharyya_noiseless_extrapolated", bhattacharyya(exact_p, ext.distribution)}};
  z["abs_error_hartree"] = {{"unmitigated", std::abs(unmitigated.mean - reference.e_elst)},
                            {"mitigated", std::abs(mitigated.mean - reference.e_elst)}};
  report["zne"] = std::move(z);
  json elst;
  elst["shot_estimate"] = {{"route", "zne_mitigated"},
                           {"e_elst_hartree", mitigated.mean},
                           {"e_elst_kcalmol", mitigated.mean * kHartreeToKcalMol},
                           {"estimate", estimate_json(mitigated, run_cfg.rng_seed)}};
  elst["vqe_exact"] = energy_json(reference);
  if (p.fci) elst["fci"] = fci_json(*p.fci);
  report["electrostatics"] = std::move(elst);

  PipelineOutput out;
  out.report = report.dump(2) + "\n";
  out.sidecars["trace.csv"] = trace_csv(p.vqe.trace);
  return out;
}

std::string cmd_compare(const std::string& text_a, const std::string& text_b) {
  auto parse = [](const std::string& text, const char* which) {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(which, e.what());
    }
    if (!j.is_object() || j.value("format", "") != kReportFormat)
      throw ParseError(std::string(which) + ".format", std::string("expected '") + kReportFormat + "'");
    return j;
  };
  const json a = parse(text_a, "report_a");
  const json b = parse(text_b, "report_b");
  if (a.at("units") != b.at("units")) throw InputError("compare: reports use different units");
  auto shot = [](const json& r, const char* which) -> std::pair<double, double> {
    try {
      const json& e = r.at("electrostatics").at("shot_estimate");
      const json& sem = e.at("estimate").at("sem_hartree");
      return {e.at("e_elst_hartree").get<double>(),
              sem.is_null() ? std::numeric_limits<double>::infinity() : sem.get<double>()};
    } catch (const json::exception&) {
      throw ParseError(std::string(which) + ".electrostatics.shot_estimate", "missing energy estimate");
    }
  };
  const auto [ea, sa] = shot(a, "report_a");
  const auto [eb, sb] = shot(b, "report_b");
  const double delta = eb - ea;
  const double sem = std::hypot(sa, sb);
  json out;
  out["format"] = "espnor-compare-v1";
  out["instance_digest_a"] = a.value("instance_digest", "");
  out["instance_digest_b"] = b.value("instance_digest", "");
  out["delta_e_hartree"] = delta;
  out["delta_e_kcalmol"] = delta * kHartreeToKcalMol;
  out["sem_hartree"] = number(sem);
  out["sem_kcalmol"] = number(sem * kHartreeToKcalMol);
  out["sign"] = delta > 0 ? "positive" : (delta < 0 ? "negative" : "zero");
  auto fci = [](const json& r) -> std::optional<double> {
    if (!r.at("electrostatics").contains("fci")) return std::nullopt;
    return r["electrostatics"]["fci"]["diagonal"]["e_elst_hartree"].get<double>();
  };
  const auto fa = fci(a), fb = fci(b);
  if (fa && fb) {
    const double ref = *fb - *fa;
    const double dev = std::abs(delta - ref) * kHartreeToKcalMol;
    out["fci_delta_e_hartree"] = ref;
    out["fci_delta_e_kcalmol"] = ref * kHartreeToKcalMol;
    out["deviation_from_fci_kcalmol"] = dev;
    out["within_chemical_accuracy"] = dev <= kChemicalAccuracyKcalMol;
    out["sign_matches_fci"] = (delta > 0) == (ref > 0);
  }
  return out.dump(2) + "\n";
}

std::string cmd_oracle(const ProblemInstance& instance) {
  const ExactElectrostatics f = stage("oracle", [&] { return exact_electrostatics(instance); });
  json j;
  j["format"] = kReportFormat;
  j["command"] = "oracle";
  j["instance_digest"] = instance_digest(instance);
  j["units"] = {{"energy", "hartree"}, {"energy_report", "kcal/mol"}, {"kcal_per_hartree", kHartreeToKcalMol}};
  j["fci"] = fci_json(f);
  j["gamma_act"] = matrix_json(f.solution.gamma);
  j["sector_dimension"] = f.solution.basis.size();
  j["eigen_residual"] = f.solution.residual;
  j["electrostatics"] = {{"shot_estimate", energy_json(f.diagonal)}, {"fci", fci_json(f)}};
  EnergyEstimate exact;
  exact.mean = exact.min_sample = exact.max_sample = f.diagonal.e_elst;
  j["electrostatics"]["shot_estimate"]["estimate"] = estimate_json(exact, 0);
  return j.dump(2) + "\n";
}

std::string cmd_transpile(const Circuit& circuit) {
  const Circuit native = stage("transpile", [&] { return compile_to_native(circuit); });
  const GateCounts src = count_gates(circuit);
  const GateCounts nat = count_gates(native);
  json j;
  j["format"] = "espnor-transpile-v1";
  j["n_qubits"] = circuit.n_qubits;
  j["source"] = {{"gates", circuit.size()}, {"by_kind", src.by_kind}};
  j["native"] = {{"gates", native.size()},
                 {"single_qubit", nat.single_qubit},
                 {"two_qubit", nat.two_qubit},
                 {"by_kind", nat.by_kind}};
  if (circuit.n_qubits <= 10)
    j["phase_insensitive_distance"] = phase_insensitive_distance(circuit_unitary(native), circuit_unitary(circuit));
  return j.dump(2) + "\n";
}

}  // namespace espnor
