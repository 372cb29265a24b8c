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

#include "espnor/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>

namespace espnor {

void NoiseSpec::validate() const {
  if (!(p1 >= 0.0 && p1 <= 1.0)) throw InputError("noise.p1 must lie in [0, 1]");
  if (!(p2 >= 0.0 && p2 <= 1.0)) throw InputError("noise.p2 must lie in [0, 1]");
}

std::string_view to_string(NoiseMode m) {
  return m == NoiseMode::trajectory ? "trajectory" : "density_matrix";
}

NoiseMode parse_noise_mode(std::string_view name) {
  if (name == "trajectory") return NoiseMode::trajectory;
  if (name == "density_matrix") return NoiseMode::density_matrix;
  throw InputError("unknown noise mode '" + std::string(name) + "'");
}

DensityMatrix::DensityMatrix(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0 || n_qubits > 12) throw std::invalid_argument("DensityMatrix: unsupported qubit count");
  data_.assign(std::size_t{1} << (2 * n_qubits), cplx{});
  data_[0] = 1.0;
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  DensityMatrix rho(psi.n_qubits());
  const std::size_t dim = psi.dim();
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t r = 0; r < dim; ++r) rho.data_[r | (c << rho.n_qubits_)] = psi[r] * std::conj(psi[c]);
  return rho;
}

void DensityMatrix::apply_gate(const Gate& g) {
  espnor::apply_gate(data_, 2 * n_qubits_, g);
  Gate shifted = conjugate(g);
  for (int i = 0; i < g.arity(); ++i) shifted.q[i] += n_qubits_;
  espnor::apply_gate(data_, 2 * n_qubits_, shifted);
}

void DensityMatrix::depolarize(std::span<const int> qubits, double p) {
  if (p == 0.0) return;
  const int k = static_cast<int>(qubits.size());
  if (k < 1 || k > 2) throw std::invalid_argument("depolarize: one or two qubits expected");
  std::size_t row_bits[2] = {0, 0}, col_bits[2] = {0, 0};
  for (int i = 0; i < k; ++i) {
    row_bits[i] = std::size_t{1} << qubits[i];
    col_bits[i] = row_bits[i] << n_qubits_;
  }
  auto spread = [&](int x, const std::size_t* bits) {
    std::size_t v = 0;
    for (int i = 0; i < k; ++i)
      if ((x >> i) & 1) v |= bits[i];
    return v;
  };
  const int sub = 1 << k;
  const std::size_t mask = spread(sub - 1, row_bits) | spread(sub - 1, col_bits);
  for (std::size_t base = 0; base < data_.size(); ++base) {
    if (base & mask) continue;
    cplx diag_sum = 0.0;
    for (int x = 0; x < sub; ++x) diag_sum += data_[base | spread(x, row_bits) | spread(x, col_bits)];
    for (int x = 0; x < sub; ++x)
      for (int y = 0; y < sub; ++y) {
        cplx& e = data_[base | spread(x, row_bits) | spread(y, col_bits)];
        e *= (1.0 - p);
        if (x == y) e += p * diag_sum / static_cast<double>(sub);
      }
  }
}

double DensityMatrix::trace() const {
  double t = 0.0;
  const std::size_t dim = std::size_t{1} << n_qubits_;
  for (std::size_t r = 0; r < dim; ++r) t += (*this)(r, r).real();
  return t;
}

Distribution DensityMatrix::probabilities() const {
  const std::size_t dim = std::size_t{1} << n_qubits_;
  Distribution p(dim);
  for (std::size_t r = 0; r < dim; ++r) p[r] = std::max(0.0, (*this)(r, r).real());
  return p;
}

namespace {

void require_native(const Circuit& c) {
  c.validate();
  if (!c.is_native()) throw std::invalid_argument("noisy simulation requires a native RX/RZ/RXX circuit");
}

double rate(const NoiseSpec& noise, const Gate& g) { return g.arity() == 1 ? noise.p1 : noise.p2; }

// Gates skipped before the next error for a Bernoulli(p) process.
std::size_t geometric_gap(double p, std::mt19937_64& rng) {
  if (p >= 1.0) return 0;
  if (p <= 0.0) return std::numeric_limits<std::size_t>::max();
  const double g = std::floor(std::log1p(-uniform01(rng)) / std::log1p(-p));
  return g >= 1e18 ? std::numeric_limits<std::size_t>::max() : static_cast<std::size_t>(g);
}

struct ErrorEvent {
  std::size_t gate;
  unsigned code;  // two bits per addressed qubit: 0=I 1=X 2=Y 3=Z
};

constexpr std::size_t kChunk = 4096;

class TrajectoryRunner {
 public:
  TrajectoryRunner(const Circuit& c, const NoiseSpec& noise) : c_(c), noise_(noise) {
    for (std::size_t k = 0; k < c.gates.size(); ++k) (c.gates[k].arity() == 1 ? one_ : two_).push_back(k);
    // Noiseless prefix states: prefix_[k] is the state before gate k.
    StateVector psi(c.n_qubits);
    prefix_.reserve(c.gates.size() + 1);
    prefix_.push_back(psi);
    for (const Gate& g : c.gates) {
      apply_gate(psi.amplitudes(), c.n_qubits, g);
      prefix_.push_back(psi);
    }
    clean_ = std::make_unique<CdfSampler>(prefix_.back().probabilities());
  }

  // Fills shots for trajectories [begin, end) of chunk `chunk`.
  void run_chunk(std::uint64_t seed, std::size_t chunk, std::span<std::uint64_t> out,
                 std::unordered_map<std::uint64_t, CdfSampler>& memo) const {
    auto rng = make_stream(seed, 1, chunk);
    std::vector<ErrorEvent> events;
    for (auto& shot : out) {
      draw_events(rng, events);
      if (events.empty()) {
        shot = (*clean_)(rng);
      } else if (events.size() == 1) {
        const std::uint64_t key = events[0].gate * 16 + events[0].code;
        auto it = memo.find(key);
        if (it == memo.end()) it = memo.emplace(key, CdfSampler(evolve(events).probabilities())).first;
        shot = it->second(rng);
      } else {
        shot = CdfSampler(evolve(events).probabilities())(rng);
      }
    }
  }

 private:
  void draw_events(std::mt19937_64& rng, std::vector<ErrorEvent>& events) const {
    events.clear();
    auto scan = [&](const std::vector<std::size_t>& idx, double p) {
      std::size_t pos = geometric_gap(p, rng);
      while (pos < idx.size()) {
        const Gate& g = c_.gates[idx[pos]];
        unsigned code = 0;
        for (int i = 0; i < g.arity(); ++i) code |= static_cast<unsigned>(rng() >> 62) << (2 * i);
        if (code != 0) events.push_back({idx[pos], code});
        const std::size_t gap = geometric_gap(p, rng);
        if (gap >= idx.size()) break;
        pos += 1 + gap;
      }
    };
    scan(one_, noise_.p1);
    scan(two_, noise_.p2);
    std::sort(events.begin(), events.end(), [](const ErrorEvent& a, const ErrorEvent& b) { return a.gate < b.gate; });
  }

  void apply_event(StateVector& psi, const ErrorEvent& e) const {
    const Gate& g = c_.gates[e.gate];
    for (int i = 0; i < g.arity(); ++i)
      apply_pauli(psi.amplitudes(), g.q[i], static_cast<int>((e.code >> (2 * i)) & 3U));
  }

  StateVector evolve(const std::vector<ErrorEvent>& events) const {
    StateVector psi = prefix_[events.front().gate + 1];
    std::size_t next = 0;
    while (next < events.size() && events[next].gate == events.front().gate) apply_event(psi, events[next++]);
    for (std::size_t k = events.front().gate + 1; k < c_.gates.size(); ++k) {
      apply_gate(psi.amplitudes(), c_.n_qubits, c_.gates[k]);
      while (next < events.size() && events[next].gate == k) apply_event(psi, events[next++]);
    }
    return psi;
  }

  const Circuit& c_;
  NoiseSpec noise_;
  std::vector<std::size_t> one_, two_;
  std::vector<StateVector> prefix_;
  std::unique_ptr<CdfSampler> clean_;
};

}  // namespace

Distribution noisy_distribution(const Circuit& native, const NoiseSpec& noise) {
  require_native(native);
  noise.validate();
  DensityMatrix rho(native.n_qubits);
  for (const Gate& g : native.gates) {
    rho.apply_gate(g);
    rho.depolarize(std::span<const int>(g.q.data(), static_cast<std::size_t>(g.arity())), rate(noise, g));
  }
  return rho.probabilities();
}

std::vector<std::uint64_t> simulate_noisy_shots(const Circuit& native, const NoiseSpec& noise,
                                                std::uint64_t shots, std::uint64_t seed, NoiseMode mode) {
  require_native(native);
  noise.validate();
  if (shots < 1) throw std::invalid_argument("simulate_noisy: shots must be >= 1");
  if (mode == NoiseMode::density_matrix) return sample_shots(noisy_distribution(native, noise), shots, seed);

  if (native.n_qubits > 16) throw std::invalid_argument("simulate_noisy: too many qubits for trajectories");
  const TrajectoryRunner runner(native, noise);
  std::vector<std::uint64_t> out(shots);
  const std::size_t n_chunks = (shots + kChunk - 1) / kChunk;
  const unsigned n_threads =
      static_cast<unsigned>(std::min<std::size_t>(n_chunks, std::max(1u, std::thread::hardware_concurrency())));
  auto worker = [&](unsigned t) {
    std::unordered_map<std::uint64_t, CdfSampler> memo;
    for (std::size_t chunk = t; chunk < n_chunks; chunk += n_threads) {
      const std::size_t begin = chunk * kChunk;
      const std::size_t len = std::min<std::size_t>(kChunk, shots - begin);
      runner.run_chunk(seed, chunk, std::span<std::uint64_t>(out).subspan(begin, len), memo);
    }
  };
  if (n_threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  return out;
}

BitstringCounts simulate_noisy(const Circuit& native, const NoiseSpec& noise, std::uint64_t shots,
                               std::uint64_t seed, NoiseMode mode) {
  const auto stream = simulate_noisy_shots(native, noise, shots, seed, mode);
  return BitstringCounts::from_shots(native.n_qubits, stream);
}

}  // namespace espnor
