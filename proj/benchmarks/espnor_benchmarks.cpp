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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "espnor/ansatz.hpp"
#include "espnor/fci.hpp"
#include "espnor/instance.hpp"
#include "espnor/noise.hpp"
#include "espnor/sampling.hpp"
#include "espnor/transpile.hpp"
#include "espnor/vqe.hpp"

namespace espnor {
namespace {

Circuit merged_circuit() {
  const QnpAnsatz a = build_ansatz(QubitLayout{4}, 2, 2);
  std::vector<double> theta(a.n_parameters());
  for (std::size_t k = 0; k < theta.size(); ++k) theta[k] = 0.1 * static_cast<double>(k + 1);
  const Eigen::MatrixXd u = Eigen::MatrixXd::Identity(4, 4);
  return merge_measurement_rotation(a, theta, OrthogonalRotation(u));
}

void BM_ApplyRxx(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  StateVector psi(n);
  const Gate g = Gate::rxx(0, n - 1, 0.3);
  for (auto _ : state) {
    apply_gate(psi.amplitudes(), n, g);
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
}
BENCHMARK(BM_ApplyRxx)->Arg(8)->Arg(12)->Arg(16);

void BM_AnsatzEnergy(benchmark::State& state) {
  const ProblemInstance in = generate_synthetic_instance(4, 4, 1);
  const QubitLayout layout{4};
  const PauliSum h = jw_hamiltonian(in.h_act, in.g_act, in.E_core, layout);
  const QnpAnsatz a = build_ansatz(layout, 2, 2);
  const std::vector<double> theta(a.n_parameters(), 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(ansatz_energy(h, a, theta));
}
BENCHMARK(BM_AnsatzEnergy);

void BM_CompileToNative(benchmark::State& state) {
  const Circuit c = merged_circuit();
  for (auto _ : state) benchmark::DoNotOptimize(compile_to_native(c));
}
BENCHMARK(BM_CompileToNative);

void BM_NoisyTrajectories(benchmark::State& state) {
  const Circuit native = compile_to_native(merged_circuit());
  const auto shots = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(simulate_noisy_shots(native, NoiseSpec{}, shots, ++seed, NoiseMode::trajectory));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * shots));
}
BENCHMARK(BM_NoisyTrajectories)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_DensityMatrix(benchmark::State& state) {
  const Circuit native = compile_to_native(merged_circuit());
  for (auto _ : state) benchmark::DoNotOptimize(noisy_distribution(native, NoiseSpec{}));
}
BENCHMARK(BM_DensityMatrix)->Unit(benchmark::kMillisecond);

void BM_SampleShots(benchmark::State& state) {
  const StateVector psi = apply_circuit(merged_circuit(), StateVector(8));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_shots(psi, 40000, ++seed));
}
BENCHMARK(BM_SampleShots)->Unit(benchmark::kMicrosecond);

void BM_ExactGroundState(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ProblemInstance in = generate_synthetic_instance(n, n, 2);
  const int ne = in.active.n_alpha;
  for (auto _ : state) benchmark::DoNotOptimize(exact_ground_state(in.h_act, in.g_act, in.E_core, ne, ne));
}
BENCHMARK(BM_ExactGroundState)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace espnor

BENCHMARK_MAIN();
