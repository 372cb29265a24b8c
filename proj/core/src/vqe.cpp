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

#include "espnor/vqe.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include <ceres/ceres.h>

namespace espnor {

double ansatz_energy(const PauliSum& h, const QnpAnsatz& ansatz, std::span<const double> theta) {
  return expectation(prepare(ansatz, theta), h);
}

std::vector<double> ansatz_gradient(const PauliSum& h, const QnpAnsatz& ansatz, std::span<const double> theta,
                                    double step) {
  std::vector<double> x(theta.begin(), theta.end());
  std::vector<double> g(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double x0 = x[k];
    x[k] = x0 + step;
    const double ep = ansatz_energy(h, ansatz, x);
    x[k] = x0 - step;
    const double em = ansatz_energy(h, ansatz, x);
    x[k] = x0;
    g[k] = (ep - em) / (2 * step);
  }
  return g;
}

namespace {

class EnergyFunction final : public ceres::FirstOrderFunction {
 public:
  EnergyFunction(const PauliSum& h, const QnpAnsatz& a, double step) : h_(h), a_(a), step_(step) {}

  bool Evaluate(const double* parameters, double* cost, double* gradient) const override {
    const std::span<const double> theta(parameters, a_.n_parameters());
    cost[0] = ansatz_energy(h_, a_, theta);
    if (gradient) {
      const auto g = ansatz_gradient(h_, a_, theta, step_);
      std::copy(g.begin(), g.end(), gradient);
    }
    return std::isfinite(cost[0]);
  }
  int NumParameters() const override { return static_cast<int>(a_.n_parameters()); }

 private:
  const PauliSum& h_;
  const QnpAnsatz& a_;
  double step_;
};

struct RestartOutcome {
  std::vector<double> theta;
  double energy = 0.0;
  int iterations = 0;
  std::vector<TracePoint> trace;
  std::string status;
};

RestartOutcome run_restart(const PauliSum& h, const QnpAnsatz& a, const OptimizerConfig& cfg, std::uint64_t seed,
                           int restart) {
  RestartOutcome out;
  out.theta.assign(a.n_parameters(), 0.0);
  if (restart > 0) {
    auto rng = make_stream(seed, static_cast<std::uint64_t>(restart));
    std::normal_distribution<double> normal(0.0, 1.0);
    for (double& t : out.theta) t = cfg.initial_parameter_scale * normal(rng);
  }
  if (a.n_parameters() == 0 || cfg.max_iterations == 0) {
    out.energy = ansatz_energy(h, a, out.theta);
    out.trace.push_back({0, out.energy});
    out.status = a.n_parameters() == 0 ? "no parameters" : "max_iterations is 0";
    return out;
  }
  ceres::GradientProblem problem(new EnergyFunction(h, a, cfg.finite_difference_step));
  ceres::GradientProblemSolver::Options options;
  options.line_search_direction_type = ceres::LBFGS;
  options.max_num_iterations = cfg.max_iterations;
  options.gradient_tolerance = cfg.gradient_tolerance;
  options.function_tolerance = 1e-15;
  options.parameter_tolerance = 1e-12;
  options.logging_type = ceres::SILENT;
  options.minimizer_progress_to_stdout = false;
  ceres::GradientProblemSolver::Summary summary;
  ceres::Solve(options, problem, out.theta.data(), &summary);
  for (const auto& it : summary.iterations) out.trace.push_back({it.iteration, it.cost});
  out.energy = ansatz_energy(h, a, out.theta);
  out.iterations = static_cast<int>(summary.iterations.empty() ? 0 : summary.iterations.back().iteration);
  out.status = summary.message;
  return out;
}

}  // namespace

VqeResult optimize(const PauliSum& h, const QnpAnsatz& ansatz, const OptimizerConfig& config, std::uint64_t seed) {
  config.validate();
  if (h.n_qubits() != ansatz.layout.n_qubits()) throw std::invalid_argument("optimize: qubit count mismatch");
  const int n = config.restarts;
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(n));
  const unsigned n_threads =
      std::min<unsigned>(static_cast<unsigned>(n), std::max(1u, std::thread::hardware_concurrency()));
  auto worker = [&](unsigned t) {
    for (int r = static_cast<int>(t); r < n; r += static_cast<int>(n_threads))
      outcomes[static_cast<std::size_t>(r)] = run_restart(h, ansatz, config, seed, r);
  };
  if (n_threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  VqeResult res;
  for (int r = 0; r < n; ++r) {
    res.restart_energies.push_back(outcomes[static_cast<std::size_t>(r)].energy);
    const double e = outcomes[static_cast<std::size_t>(r)].energy;
    if (r == 0 || e < outcomes[static_cast<std::size_t>(res.best_restart)].energy) res.best_restart = r;
  }
  RestartOutcome& best = outcomes[static_cast<std::size_t>(res.best_restart)];
  res.theta = std::move(best.theta);
  res.energy = best.energy;
  res.iterations = best.iterations;
  res.trace = std::move(best.trace);
  res.status = std::move(best.status);
  const auto g = ansatz_gradient(h, ansatz, res.theta, config.finite_difference_step);
  for (double v : g) res.gradient_max_norm = std::max(res.gradient_max_norm, std::abs(v));
  res.converged = res.gradient_max_norm <= config.gradient_tolerance;
  return res;
}

std::string trace_csv(const std::vector<TracePoint>& trace) {
  std::ostringstream os;
  os << "iteration,energy_hartree\n";
  char buf[64];
  for (const auto& p : trace) {
    std::snprintf(buf, sizeof buf, "%d,%.15g\n", p.iteration, p.energy);
    os << buf;
  }
  return os.str();
}

}  // namespace espnor
