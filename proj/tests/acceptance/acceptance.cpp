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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "espnor/ansatz.hpp"
#include "espnor/electrostatics.hpp"
#include "espnor/estimator.hpp"
#include "espnor/fci.hpp"
#include "espnor/instance.hpp"
#include "espnor/jordan_wigner.hpp"
#include "espnor/noise.hpp"
#include "espnor/pipeline.hpp"
#include "espnor/sampling.hpp"
#include "espnor/transpile.hpp"
#include "espnor/vqe.hpp"
#include "espnor/zne.hpp"
#include "oracles.hpp"

namespace espnor {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Eigen::VectorXcd as_vector(const StateVector& s) {
  return Eigen::Map<const Eigen::VectorXcd>(s.amplitudes().data(), static_cast<Eigen::Index>(s.dim()));
}

// 8-qubit (4e,4o) pipeline shared by the estimator, noise, ZNE, transpilation
// and proxy checks. Built on first use.
struct Shared {
  ProblemInstance instance = generate_synthetic_instance(5, 4, 3);
  RunConfig config;
  PreparedPipeline p = prepare_pipeline(instance, config);
  Circuit native = compile_to_native(p.merged);
  // Exact energy from the unrotated VQE 1-PDM contracted with the active ESP block.
  double exact = [this] {
    const Eigen::MatrixXd gamma = one_rdm(prepare(p.ansatz, p.vqe.theta), p.layout);
    return p.core_term + (p.basis.J_act.array() * gamma.array()).sum();
  }();
};

Shared& shared() {
  static Shared s;
  return s;
}

Outcome route_equivalence() {
  int instances = 0;
  double worst = 0.0;
  std::uint64_t seed = 100;
  for (int n_ao = 2; n_ao <= 6; ++n_ao)
    for (int n_act = 1; n_act <= std::min(4, n_ao); ++n_act)
      for (int rep = 0; rep < 2; ++rep) {
        const ExactElectrostatics x = exact_electrostatics(generate_synthetic_instance(n_ao, n_act, ++seed));
        const double a = x.ao_direct.e_elst, m = x.mo_contraction.e_elst, d = x.diagonal.e_elst;
        worst = std::max({worst, std::abs(a - m), std::abs(a - d), std::abs(m - d)});
        ++instances;
      }
  return {instances >= 20 && worst < 1e-9, fmt("%d instances, max route spread %.2e Ha", instances, worst)};
}

Outcome oracle_consistency() {
  double worst_matrix = 0.0;
  int within = 0;
  bool variational = true;
  std::string gaps;
  for (std::uint64_t s = 1; s <= 5; ++s) {
    const ProblemInstance in = generate_synthetic_instance(4, 4, s);
    const QubitLayout layout{4};
    const PauliSum h = jw_hamiltonian(in.h_act, in.g_act, in.E_core, layout);
    const Eigen::MatrixXcd dense = h.to_dense();
    const SectorBasis basis(4, 2, 2);
    const Eigen::MatrixXd det = sector_hamiltonian(in.h_act, in.g_act, in.E_core, basis);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const auto bi = static_cast<Eigen::Index>(basis.determinant(i));
        const auto bj = static_cast<Eigen::Index>(basis.determinant(j));
        worst_matrix = std::max(worst_matrix, std::abs(dense(bi, bj) - det(static_cast<Eigen::Index>(i),
                                                                             static_cast<Eigen::Index>(j))));
      }
    OptimizerConfig cfg;
    cfg.restarts = 5;
    const VqeResult r = optimize(h, build_ansatz(layout, 2, 2), cfg, s);
    const double e0 = exact_ground_state(in.h_act, in.g_act, in.E_core, 2, 2).E0;
    const double gap = r.energy - e0;
    variational = variational && gap >= -1e-10;
    within += gap <= 1e-3;
    gaps += fmt("%s%.3f", gaps.empty() ? "" : ",", gap * 1e3);
  }
  return {worst_matrix < 1e-10 && variational && within >= 4,
          fmt("max |H_jw - H_det| %.1e, VQE gaps [%s] mHa, %d/5 within 1 mHa", worst_matrix, gaps.c_str(), within)};
}

Outcome merge_correctness() {
  std::mt19937_64 rng(2024);
  const QubitLayout layout{4};
  const QnpAnsatz a = build_ansatz(layout, 2, 2);
  double worst = 0.0;
  std::size_t max_g = 0;
  for (int t = 0; t < 20; ++t) {
    const auto theta = testing::random_angles(a.n_parameters(), rng);
    const OrthogonalRotation u(testing::random_orthogonal(4, rng));
    Circuit sequential = ansatz_circuit(a, theta);
    sequential.append(rotation_circuit(layout, decompose(u)));
    const Circuit merged = merge_measurement_rotation(a, theta, u);
    const Eigen::VectorXcd s = as_vector(apply_circuit(sequential, StateVector(8)));
    const Eigen::VectorXcd m = as_vector(apply_circuit(merged, StateVector(8)));
    worst = std::max(worst, (s - m).norm());
    // Trailing network: G gates after the PX layer, per spin block.
    std::size_t g_alpha = 0, g_beta = 0;
    for (const Gate& g : merged.gates)
      if (g.kind == GateKind::G) (g.q[0] < 4 ? g_alpha : g_beta)++;
    max_g = std::max({max_g, g_alpha, g_beta});
  }
  return {worst < 1e-9 && max_g <= 6, fmt("20 pairs, max ||psi_merged - psi_seq|| %.1e, max G per block %zu (<= 6)",
                                          worst, max_g)};
}

Outcome estimator_soundness() {
  Shared& sh = shared();
  const PreparedPipeline& p = sh.p;
  const Distribution exact_p = analytic_distribution(p.state);
  const PostselectedDistribution post = postselect(exact_p, p.layout, 2, 2);
  const double analytic = estimate_from_distribution(post.kept, p.layout, p.basis.w, p.core_term, 40000).mean;
  const double analytic_err = std::abs(analytic - sh.exact);

  int covered = 0;
  bool retention_exact = true;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const BitstringCounts counts = sample(p.state, 40000, seed);
    const PostselectedSamples kept = postselect(counts, p.layout, 2, 2);
    retention_exact = retention_exact && kept.retention_fraction == 1.0;
    const EnergyEstimate e = estimate_with_sem(kept.kept, p.layout, p.basis.w, p.core_term);
    covered += std::abs(e.mean - sh.exact) < 4 * e.sem;
  }
  return {analytic_err <= 1e-12 && covered >= 95 && retention_exact,
          fmt("analytic error %.1e Ha, %d/100 seeds within 4 sem, noiseless retention %s", analytic_err, covered,
              retention_exact ? "1.0" : "below 1")};
}

Outcome noise_realism() {
  Shared& sh = shared();
  const NoiseSpec rates{3e-4, 1.5e-2};
  const Distribution dm = noisy_distribution(sh.native, rates);
  const double retention = postselect(dm, sh.p.layout, 2, 2).retention;
  const Distribution traj = to_distribution(simulate_noisy(sh.native, rates, 1000000, 11, NoiseMode::trajectory));
  const double tv = total_variation(traj, dm);
  return {retention >= 0.3 && retention <= 0.7 && tv < 0.01,
          fmt("%zu native gates, retention %.3f, TV(trajectory, density matrix) %.4f at 1e6 trajectories",
              sh.native.size(), retention, tv)};
}

Outcome zne_efficacy() {
  Shared& sh = shared();
  const PreparedPipeline& p = sh.p;
  const NoiseSpec noise{};
  const Distribution ideal = analytic_distribution(p.state);
  std::vector<double> err_noisy, err_mit, bc_noisy, bc_mit;
  for (std::uint64_t s = 0; s < 20; ++s) {
    ZneConfig z;
    z.rng_seed = 1000 + s;
    const ZneMeasurement m = zne_measure(sh.native, noise, z);
    const ZneExtrapolation x = zne_extrapolate_frequencies(m.distributions, z, 8);
    const PostselectedDistribution noisy = postselect(m.distributions.front(), p.layout, 2, 2);
    const double e_noisy = estimate_from_distribution(noisy.kept, p.layout, p.basis.w, p.core_term, 1).mean;
    const EnergyEstimate e_mit =
        mitigated_electrostatics(x.distribution, x.sigma, p.layout, 2, 2, p.basis.w, p.core_term);
    err_noisy.push_back(std::abs(e_noisy - sh.exact));
    err_mit.push_back(std::abs(e_mit.mean - sh.exact));
    bc_noisy.push_back(bhattacharyya(ideal, m.distributions.front()));
    bc_mit.push_back(bhattacharyya(ideal, x.distribution));
  }
  const double en = median(err_noisy), em = median(err_mit), bn = median(bc_noisy), bm = median(bc_mit);
  return {em <= en && bm > bn,
          fmt("20 seeds, median |error| noisy %.2f vs mitigated %.2f mHa, median overlap %.3f -> %.3f", en * 1e3,
              em * 1e3, bn, bm)};
}

Outcome transpilation_fidelity() {
  Shared& sh = shared();
  double worst = testing::phase_distance(circuit_unitary(sh.native), circuit_unitary(sh.p.merged));
  std::mt19937_64 rng(77);
  int circuits = 1;
  for (int n_spatial = 1; n_spatial <= 4; ++n_spatial) {
    const QubitLayout layout{n_spatial};
    for (int na = 0; na <= n_spatial; ++na) {
      const QnpAnsatz a = build_ansatz(layout, na, na);
      const OrthogonalRotation rot(testing::random_orthogonal(n_spatial, rng));
      const Circuit c = merge_measurement_rotation(a, testing::random_angles(a.n_parameters(), rng), rot);
      worst = std::max(worst, testing::phase_distance(circuit_unitary(compile_to_native(c)), circuit_unitary(c)));
      ++circuits;
    }
  }
  const Eigen::MatrixXcd u = circuit_unitary(sh.native);
  const std::size_t n0 = sh.native.size();
  double fold_worst = 0.0;
  long count_worst = 0;
  std::string counts;
  for (double lambda : {1.0, 2.0, 3.0}) {
    const Circuit f = fold_gates_at_random(sh.native, lambda, 5);
    fold_worst = std::max(fold_worst, testing::phase_distance(circuit_unitary(f), u));
    const long off = std::lround(std::abs(static_cast<double>(f.size()) - lambda * static_cast<double>(n0)));
    count_worst = std::max(count_worst, off);
    counts += fmt("%s%zu", counts.empty() ? "" : "/", f.size());
  }
  return {worst < 1e-9 && fold_worst < 1e-9 && count_worst <= 2,
          fmt("%d circuits, max compile distance %.1e; folded counts %s, max miss %ld gates, distance %.1e", circuits,
              worst, counts.c_str(), count_worst, fold_worst)};
}

Outcome proxy() {
  Shared& sh = shared();
  const PreparedPipeline& p = sh.p;
  const OrthogonalRotation& u = p.basis.U;
  const Eigen::MatrixXd hbar = u.matrix().transpose() * sh.instance.h_act * u.matrix();
  const Eigen::VectorXd gbar_exact = diag_rdm_from_distribution(analytic_distribution(p.state), p.layout);
  const double exact = hbar.diagonal().dot(gbar_exact);
  int within = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const PostselectedSamples kept = postselect(sample(p.state, 40000, 500 + seed), p.layout, 2, 2);
    const double e = one_body_diag_energy(sh.instance.h_act, u, diag_rdm_from_counts(kept.kept, p.layout)).mean;
    const double sem = linear_occupation_estimate(kept.kept, p.layout, hbar.diagonal(), 0.0).sem;
    within += std::abs(e - exact) <= 3 * sem;
    worst = std::max(worst, std::abs(e - exact) / sem);
  }
  return {within == 10, fmt("%d/10 seeds within 3 sem (max |dev|/sem %.2f)", within, worst)};
}

Outcome determinism() {
  const ProblemInstance in = generate_synthetic_instance(5, 4, 3);
  RunConfig cfg;
  cfg.rng_seed = 42;
  cfg.noise = NoiseSpec{};
  const PipelineOutput a = cmd_run(in, cfg), b = cmd_run(in, cfg);
  RunConfig zcfg = cfg;
  ZneConfig z;
  z.rng_seed = 42;
  z.trajectories_per_lambda = 4000;
  z.mode = NoiseMode::trajectory;
  zcfg.zne = z;
  const PipelineOutput c = cmd_zne(in, zcfg), d = cmd_zne(in, zcfg);
  const bool same =
      a.report == b.report && a.sidecars == b.sidecars && c.report == d.report && c.sidecars == d.sidecars;
  return {same, fmt("run report %zu bytes, zne report %zu bytes, reruns %s", a.report.size(), c.report.size(),
                    same ? "byte-identical" : "differ")};
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> check;
};

}  // namespace
}  // namespace espnor

int main() {
  using namespace espnor;
  const std::vector<Criterion> criteria{
      {1, "route equivalence", 10, route_equivalence},
      {2, "oracle consistency", 120, oracle_consistency},
      {3, "merge correctness", 30, merge_correctness},
      {4, "estimator soundness", 120, estimator_soundness},
      {5, "noise realism", 600, noise_realism},
      {6, "zne efficacy", 900, zne_efficacy},
      {7, "transpilation fidelity", 60, transpilation_fidelity},
      {8, "one-body proxy", 60, proxy},
      {9, "determinism", 600, determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool ok = o.ok && secs < c.limit_s;
    failed += !ok;
    std::printf("%s criterion %d (%s): %s; %.1f s (limit %.0f s)\n", ok ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.limit_s);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
