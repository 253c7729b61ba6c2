// Copyright 2026 The critcoupling Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "critcoupling/nystrom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "critcoupling/eigensolver.hpp"
#include "critcoupling/error.hpp"

namespace crit::nystrom {

namespace {

// sqrt(v(x_i)) int K-row: int_0^L G(x_i, y) sqrt(v(y)) dy with L the end of the domain.
double row_integral(const kernels::KernelSpec& spec, const Potential& pot, double x, double sqrt_vx,
                    double upper) {
  if (sqrt_vx == 0.0) return 0.0;
  const auto integrand = [&](double y) {
    if (kernels::near_diagonal(x, y)) return 0.0;
    const double v = pot(y);
    if (v == 0.0) return 0.0;
    return kernels::green(spec, x, y) * std::sqrt(v);
  };
  quadrature::AdaptiveOptions opts;
  opts.abs_tol = 1e-14;
  opts.rel_tol = 1e-11;
  const quadrature::Integrand1D f{integrand, {{x, quadrature::SingularityType::log, 0.0}}};
  const double left = quadrature::integrate_adaptive(f, 0.0, x, opts).value;
  const double right = x < upper ? quadrature::integrate_adaptive(f, x, upper, opts).value : 0.0;
  return sqrt_vx * (left + right);
}

quadrature::QuadratureGrid ladder_grid(const ConvergeOptions& opts, int bisections) {
  quadrature::GridLayout layout = quadrature::nystrom_layout(opts.n0, opts.map, opts.scale);
  layout.bisections = bisections;
  return quadrature::semi_infinite_grid(layout);
}

}  // namespace

double DiscretizedProblem::frobenius_norm() const {
  double s = 0.0;
  for (double v : matrix) s += v * v;
  return std::sqrt(s);
}

DiscretizedProblem discretize(const kernels::KernelSpec& spec, const Potential& pot,
                              const quadrature::QuadratureGrid& grid, parallel::Execution exec) {
  spec.validate();
  const std::size_t n = grid.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(grid.nodes[i] < grid.nodes[i + 1]) || kernels::near_diagonal(grid.nodes[i], grid.nodes[i + 1])) {
      throw DiagonalError("discretize: grid nodes must be distinct and increasing");
    }
  }
  DiscretizedProblem prob{grid, std::vector<double>(n * n, 0.0), spec, pot};
  const double upper = grid.map == quadrature::DomainMap::truncated ? grid.map_params.at(0)
                                                                     : std::numeric_limits<double>::infinity();
  std::vector<double> sqrt_w(n), sqrt_v(n), row(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    sqrt_w[i] = std::sqrt(grid.weights[i]);
    sqrt_v[i] = std::sqrt(pot(grid.nodes[i]));
  }
  auto& m = prob.matrix;
  // Lower triangle row by row; each entry is written exactly twice with the same value.
  parallel::for_each_index(n, exec, [&](std::size_t i) {
    const double xi = grid.nodes[i];
    for (std::size_t j = 0; j < i; ++j) {
      double k = 0.0;
      if (sqrt_v[i] != 0.0 && sqrt_v[j] != 0.0) {
        k = sqrt_v[i] * kernels::green(spec, xi, grid.nodes[j]) * sqrt_v[j];
      }
      const double entry = sqrt_w[i] * k * sqrt_w[j];
      m[i * n + j] = entry;
      m[j * n + i] = entry;
    }
    row[i] = row_integral(spec, pot, xi, sqrt_v[i], upper);
  });
  parallel::for_each_index(n, exec, [&](std::size_t i) {
    // w_j K_ij = M_ij sqrt(w_j) / sqrt(w_i)
    std::vector<double> terms;
    terms.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) terms.push_back(m[i * n + j] * sqrt_w[j] / sqrt_w[i]);
    }
    m[i * n + i] = row[i] - quadrature::pairwise_sum(terms);
  });
  for (double v : m) {
    if (!std::isfinite(v)) throw DivergenceError("discretize: kernel matrix has non-finite entries");
  }
  return prob;
}

CriticalCouplings characteristic_numbers(const DiscretizedProblem& prob, std::size_t k, double alpha) {
  const std::size_t n = prob.n();
  if (k < 1 || 4 * k > n) {
    throw ConfigError("number of characteristic values must satisfy 1 <= k <= n/4 (n = " + std::to_string(n) + ")");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be positive");
  if (prob.frobenius_norm() == 0.0) {
    throw ValidationError("kernel matrix vanishes: the potential binds nothing");
  }
  const linalg::SymmetricEigen eig = linalg::symmetric_eigen(prob.matrix, n);
  CriticalCouplings out;
  out.n = n;
  for (std::size_t i = 0; i < k; ++i) {
    const double mu = eig.values[i];
    if (!(mu > 0.0)) {
      throw ValidationError("only " + std::to_string(i) + " positive eigenvalues; no further characteristic numbers");
    }
    out.values.push_back(alpha / mu);
  }
  out.eigenfunction.resize(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.eigenfunction[i] = eig.top_vector[i] / std::sqrt(prob.grid.weights[i]);
    sum += eig.top_vector[i];
  }
  if (sum < 0.0) {
    for (double& v : out.eigenfunction) v = -v;
  }
  out.n_sequence = {n};
  out.g1_sequence = {out.values.front()};
  return out;
}

CriticalCouplings converge(const kernels::KernelSpec& spec, const Potential& pot, double alpha,
                           const ConvergeOptions& opts) {
  if (!(opts.tol >= 1e-6)) throw ConfigError("convergence tolerance must be at least 1e-6");
  if (opts.n_max < 4 * opts.n0) throw ConfigError("n_max must allow at least three grid levels");
  std::vector<std::size_t> ns;
  std::vector<double> gs;
  CriticalCouplings last;
  for (int b = 0;; ++b) {
    const auto grid = ladder_grid(opts, b);
    if (grid.size() > static_cast<std::size_t>(opts.n_max)) {
      throw ConvergenceError("no convergence to relative tolerance " + std::to_string(opts.tol) +
                                 " up to n = " + std::to_string(ns.back()) + "; last g1 values " +
                                 std::to_string(gs[gs.size() - 2]) + " -> " + std::to_string(gs.back()),
                             gs.back());
    }
    last = characteristic_numbers(discretize(spec, pot, grid), opts.k, alpha);
    ns.push_back(last.n);
    gs.push_back(last.values.front());
    if (gs.size() < 3) continue;
    const double g1 = gs[gs.size() - 3];
    const double g2 = gs[gs.size() - 2];
    const double g3 = gs.back();
    if (std::abs(g3 - g2) < opts.tol * std::abs(g3)) {
      last.error_estimate = std::abs(g3 - g2);
      const double d12 = g1 - g2;
      const double d23 = g2 - g3;
      if (d23 != 0.0 && d12 / d23 > 1.0) {
        last.richardson_estimate = g3 - d23 / (d12 / d23 - 1.0);
      }
      break;
    }
  }
  last.n_sequence = std::move(ns);
  last.g1_sequence = std::move(gs);
  return last;
}

CriticalCouplings converge(const kernels::KernelSpec& spec, const Potential& pot, double alpha, double tol) {
  ConvergeOptions opts;
  opts.tol = tol;
  return converge(spec, pot, alpha, opts);
}

}  // namespace crit::nystrom
