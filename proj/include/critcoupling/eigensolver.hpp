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
#include <vector>

namespace crit::linalg {

struct SymmetricEigen {
  /// All eigenvalues, descending.
  std::vector<double> values;
  /// Unit eigenvector of values[0].
  std::vector<double> top_vector;
};

/// Dense symmetric eigensolver: Householder reduction to tridiagonal form,
/// implicit QL for the eigenvalues, inverse iteration on the tridiagonal
/// matrix plus back-transformation for the leading eigenvector.
/// `a` is the full n x n matrix in row-major order (only symmetric input is
/// meaningful). Throws ConvergenceError when an eigenvalue needs more than
/// max_sweeps QL iterations.
SymmetricEigen symmetric_eigen(std::vector<double> a, std::size_t n, int max_sweeps = 60);

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal d and
/// subdiagonal e (e.size() == d.size() - 1), ascending.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e, int max_sweeps = 60);

}  // namespace crit::linalg
