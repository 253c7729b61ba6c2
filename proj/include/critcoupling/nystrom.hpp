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

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "critcoupling/kernels.hpp"
#include "critcoupling/parallel.hpp"
#include "critcoupling/potentials.hpp"
#include "critcoupling/quadrature.hpp"

namespace crit::nystrom {

/// Symmetric Nystrom matrix M_ij = sqrt(w_i) K(x_i, x_j) sqrt(w_j).
/// The log-singular diagonal is handled by singularity subtraction:
///   M_ii = int_0^inf K(x_i, y) dy - sum_{j != i} w_j K(x_i, x_j),
/// with the row integral done adaptively.
struct DiscretizedProblem {
  quadrature::QuadratureGrid grid;
  std::vector<double> matrix;  // row-major n x n
  kernels::KernelSpec spec;
  Potential pot;

  std::size_t n() const noexcept { return grid.size(); }
  double operator()(std::size_t i, std::size_t j) const { return matrix[i * n() + j]; }
  double frobenius_norm() const;
};

DiscretizedProblem discretize(const kernels::KernelSpec& spec, const Potential& pot,
                              const quadrature::QuadratureGrid& grid,
                              parallel::Execution exec = parallel::Execution::parallel);

struct CriticalCouplings {
  /// g_1 <= g_2 <= ... (alpha / mu_i for the largest eigenvalues mu_i).
  std::vector<double> values;
  /// phi at the nodes for g_1, normalized to sum_i w_i phi_i^2 = 1, positive.
  std::vector<double> eigenfunction;
  std::size_t n = 0;
  std::optional<double> richardson_estimate;
  /// Grid sizes and g_1 values visited by converge().
  std::vector<std::size_t> n_sequence;
  std::vector<double> g1_sequence;
  /// |g_1(n) - g_1(n/2)| at the finest level (0 for a single solve).
  double error_estimate = 0.0;
};

/// k smallest characteristic numbers; requires 1 <= k <= n/4. Throws
/// ValidationError for a vanishing matrix and ConvergenceError if the
/// eigensolver stalls.
CriticalCouplings characteristic_numbers(const DiscretizedProblem& prob, std::size_t k, double alpha);

struct ConvergeOptions {
  double tol = 1e-4;
  int n0 = 200;
  int n_max = 3200;
  quadrature::DomainMap map = quadrature::DomainMap::rational;
  double scale = 2.0;
  std::size_t k = 1;
};

/// Solves on n0, 2 n0, 4 n0, ... nodes until successive g_1 differ by less
/// than tol (relative), with at least three levels. Reports the finest value
/// and a Richardson estimate from the last three levels. Throws
/// ConvergenceError carrying the best value if n_max is reached first.
CriticalCouplings converge(const kernels::KernelSpec& spec, const Potential& pot, double alpha,
                           const ConvergeOptions& opts);
CriticalCouplings converge(const kernels::KernelSpec& spec, const Potential& pot, double alpha, double tol);

}  // namespace crit::nystrom
