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

#include "espnor/zne.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <unsupported/Eigen/LevenbergMarquardt>

namespace espnor {

Circuit fold_gates_at_random(const Circuit& native, double lambda, std::uint64_t seed) {
  if (!(lambda >= 1.0)) throw std::invalid_argument("fold_gates_at_random: lambda must be >= 1");
  native.validate();
  if (!native.is_native()) throw std::invalid_argument("fold_gates_at_random: circuit must be native");
  if (lambda == 1.0 || native.gates.empty()) return native;
  const std::size_t n0 = native.gates.size();
  std::size_t remaining = static_cast<std::size_t>(std::llround((lambda - 1.0) * static_cast<double>(n0) / 2.0));
  std::vector<std::size_t> folds(n0, 0);
  auto rng = make_stream(seed, 0x7a6e65);
  std::vector<std::size_t> order(n0);
  while (remaining > 0) {
    std::iota(order.begin(), order.end(), 0);
    const std::size_t take = std::min(remaining, n0);
    // Partial Fisher-Yates: the first `take` slots are a uniform sample.
    for (std::size_t i = 0; i < take; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng() % (n0 - i));
      std::swap(order[i], order[j]);
      ++folds[order[i]];
    }
    remaining -= take;
  }
  Circuit out(native.n_qubits);
  for (std::size_t k = 0; k < n0; ++k) {
    const Gate& g = native.gates[k];
    out.add(g);
    for (std::size_t f = 0; f < folds[k]; ++f) out.add(inverse(g)).add(g);
  }
  return out;
}

namespace {

constexpr double kUnresolvedDecay = 1e-3;

// Residuals of a + b exp(-kappa^2 x) - y; kappa^2 = c keeps c >= 0.
struct ExpResidual : Eigen::DenseFunctor<double> {
  ExpResidual(std::span<const double> xs, std::span<const double> ys)
      : Eigen::DenseFunctor<double>(3, static_cast<int>(xs.size())), x(xs), y(ys) {}

  int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& f) const {
    for (std::size_t i = 0; i < x.size(); ++i) f(i) = p(0) + p(1) * std::exp(-p(2) * p(2) * x[i]) - y[i];
    return 0;
  }
  int df(const Eigen::VectorXd& p, Eigen::MatrixXd& j) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double e = std::exp(-p(2) * p(2) * x[i]);
      j(i, 0) = 1.0;
      j(i, 1) = e;
      j(i, 2) = -2.0 * p(2) * x[i] * p(1) * e;
    }
    return 0;
  }

  std::span<const double> x, y;
};

}  // namespace

ZneFit fit_exponential(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 3) throw std::invalid_argument("fit_exponential: need >= 3 points");
  ZneFit fit;
  Eigen::VectorXd p(3);
  p << ys.back(), ys.front() - ys.back(), 1.0;
  ExpResidual functor(xs, ys);
  Eigen::LevenbergMarquardt<ExpResidual> lm(functor);
  lm.setFtol(1e-15);
  lm.setXtol(1e-15);
  lm.setGtol(0.0);
  lm.setMaxfev(2000);
  const auto status = lm.minimize(p);
  fit.a = p(0);
  fit.b = p(1);
  fit.c = p(2) * p(2);
  if (status == Eigen::LevenbergMarquardtSpace::ImproperInputParameters || !std::isfinite(fit.a) ||
      !std::isfinite(fit.b) || !std::isfinite(fit.c)) {
    fit.ok = false;
    return fit;
  }
  // A decay that is complete before the first abscissa leaves a + b
  // unconstrained by the data (b grows like exp(c x_min)); no extrapolation.
  const double x_min = *std::min_element(xs.begin(), xs.end());
  if (std::exp(-fit.c * x_min) < kUnresolvedDecay) {
    fit.ok = false;
    return fit;
  }

  // Covariance in (a, b, c). When b ~ 0 the c column vanishes and c is
  // unidentifiable, so errors are taken from the (a, b) sub-model.
  const std::size_t m = xs.size();
  Eigen::MatrixXd j(m, 3);
  Eigen::VectorXd r(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double e = std::exp(-fit.c * xs[i]);
    j(i, 0) = 1.0;
    j(i, 1) = e;
    j(i, 2) = -xs[i] * fit.b * e;
    r(i) = fit.a + fit.b * e - ys[i];
  }
  const double rss = r.squaredNorm();
  auto errors = [&](int k) -> std::pair<double, double> {
    const Eigen::MatrixXd jk = j.leftCols(k);
    const Eigen::MatrixXd jtj = jk.transpose() * jk;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jtj);
    if (!lu.isInvertible() || m <= static_cast<std::size_t>(k))
      return {std::numeric_limits<double>::quiet_NaN(), 0.0};
    const Eigen::MatrixXd cov = lu.inverse() * (rss / static_cast<double>(m - static_cast<std::size_t>(k)));
    return {std::sqrt(std::max(0.0, cov(0, 0))), std::sqrt(std::max(0.0, cov(1, 1)))};
  };
  auto [sa, sb] = errors(3);
  if (std::isnan(sa)) std::tie(sa, sb) = errors(2);
  if (std::isnan(sa)) {
    fit.ok = false;
    return fit;
  }
  fit.sigma_a = sa;
  fit.sigma_b = sb;
  return fit;
}

ZneExtrapolation zne_extrapolate_frequencies(const std::vector<Distribution>& freq_by_lambda, const ZneConfig& config,
                                             int n_qubits) {
  config.validate();
  if (freq_by_lambda.size() != config.lambdas.size())
    throw std::invalid_argument("zne_extrapolate_frequencies: one distribution per lambda required");
  const std::size_t dim = std::size_t{1} << n_qubits;
  for (const auto& d : freq_by_lambda) {
    if (d.size() != dim) throw std::invalid_argument("zne_extrapolate_frequencies: distribution size mismatch");
    const double s = std::accumulate(d.begin(), d.end(), 0.0);
    if (std::abs(s - 1.0) > 1e-9) throw std::invalid_argument("zne_extrapolate_frequencies: unnormalized input");
  }
  std::vector<double> xs(config.lambdas);
  xs.push_back(config.anchor_lambda);
  const double anchor = config.anchor_for(n_qubits);

  ZneExtrapolation out;
  out.distribution.assign(dim, 0.0);
  out.sigma.assign(dim, 0.0);
  out.fits.resize(dim);
  std::vector<double> ys(xs.size());
  for (std::size_t s = 0; s < dim; ++s) {
    for (std::size_t k = 0; k < freq_by_lambda.size(); ++k) ys[k] = freq_by_lambda[k][s];
    ys.back() = anchor;
    const auto [lo, hi] = std::minmax_element(ys.begin(), ys.end() - 1);
    ZneFit fit;
    if (*hi - *lo <= 1e-12) {
      fit.a = ys.front();
      fit.constant = true;
    } else {
      fit = fit_exponential(xs, ys);
    }
    out.fits[s] = fit;
    if (fit.ok) {
      out.distribution[s] = std::max(0.0, fit.at_zero());
      out.sigma[s] = std::hypot(fit.sigma_a, fit.sigma_b);
    } else {
      out.distribution[s] = ys.front();
      out.sigma[s] = std::numeric_limits<double>::infinity();
      ++out.failed_fits;
    }
  }
  const double total = std::accumulate(out.distribution.begin(), out.distribution.end(), 0.0);
  if (!(total > 0)) throw std::runtime_error("zne_extrapolate_frequencies: all extrapolated frequencies are zero");
  for (double& v : out.distribution) v /= total;
  return out;
}

EnergyEstimate mitigated_electrostatics(const Distribution& p, std::span<const double> sigma,
                                        const QubitLayout& layout, int n_alpha, int n_beta, const Eigen::VectorXd& w,
                                        double core_term) {
  if (p.size() != (std::size_t{1} << layout.n_qubits()) || sigma.size() != p.size())
    throw std::invalid_argument("mitigated_electrostatics: size mismatch");
  if (w.size() != layout.n_spatial) throw std::invalid_argument("mitigated_electrostatics: weight count mismatch");
  auto active_energy = [&](std::size_t i) {
    double e = 0.0;
    for (int v = 0; v < layout.n_spatial; ++v) e += w(v) * layout.spatial_occupation(i, v);
    return e;
  };
  double mass = 0.0, weighted = 0.0, lo = INFINITY, hi = -INFINITY;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (layout.count_alpha(i) != n_alpha || layout.count_beta(i) != n_beta) continue;
    kept.push_back(i);
    if (p[i] <= 0) continue;
    const double e = active_energy(i);
    mass += p[i];
    weighted += p[i] * e;
    lo = std::min(lo, core_term + e);
    hi = std::max(hi, core_term + e);
  }
  if (!(mass > 0)) throw std::runtime_error("mitigated_electrostatics: no probability mass in the target sector");
  const double mean_active = weighted / mass;
  // dE/df_i = (e_i - mean) / F for kept states; discarded states do not enter.
  double var = 0.0;
  for (std::size_t i : kept) {
    if (sigma[i] == 0.0) continue;
    const double d = (active_energy(i) - mean_active) / mass;
    if (d == 0.0) continue;
    var += d * d * sigma[i] * sigma[i];
  }
  EnergyEstimate est;
  est.mean = core_term + mean_active;
  est.sem = std::sqrt(var);
  est.min_sample = lo;
  est.max_sample = hi;
  return est;
}

ZneMeasurement zne_measure(const Circuit& native, const NoiseSpec& noise, const ZneConfig& config) {
  config.validate();
  ZneMeasurement m;
  m.lambdas = config.lambdas;
  for (std::size_t k = 0; k < config.lambdas.size(); ++k) {
    const Circuit folded = fold_gates_at_random(native, config.lambdas[k], config.rng_seed + 1000003ULL * k);
    m.gate_counts.push_back(folded.size());
    if (config.trajectories_per_lambda == 0) {
      m.distributions.push_back(noisy_distribution(folded, noise));
    } else {
      const auto counts = simulate_noisy(folded, noise, config.trajectories_per_lambda,
                                         config.rng_seed ^ (0x9e3779b97f4a7c15ULL * (k + 1)), config.mode);
      m.distributions.push_back(to_distribution(counts));
    }
  }
  return m;
}

std::pair<Circuit, std::vector<double>> invert_occupation_convention(const Circuit& circuit,
                                                                    std::span<const double> theta) {
  circuit.validate();
  Circuit out(circuit.n_qubits);
  for (int q = 0; q < circuit.n_qubits; ++q) out.add(Gate::x(q));
  for (const Gate& g : circuit.gates) {
    if (g.kind != GateKind::X && g.kind != GateKind::G && g.kind != GateKind::PX)
      throw std::invalid_argument("invert_occupation_convention: only ansatz circuits (X, G, PX) are accepted");
    out.add(g.kind == GateKind::X ? g : inverse(g));
  }
  std::vector<double> neg(theta.size());
  std::transform(theta.begin(), theta.end(), neg.begin(), [](double t) { return -t; });
  return {out, neg};
}

}  // namespace espnor
