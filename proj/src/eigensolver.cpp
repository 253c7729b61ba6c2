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

#include "critcoupling/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "critcoupling/error.hpp"

namespace crit::linalg {

namespace {

struct Tridiagonal {
  std::vector<double> d;
  std::vector<double> e;                     // e[k] couples k and k+1
  std::vector<std::vector<double>> reflect;  // unit Householder vectors, acting on k+1..n-1
};

// A <- H A H for H = I - 2 v v^T on the trailing block, column by column.
Tridiagonal householder_reduce(std::vector<double>& a, std::size_t n) {
  Tridiagonal t;
  t.d.assign(n, 0.0);
  t.e.assign(n > 0 ? n - 1 : 0, 0.0);
  t.reflect.resize(n > 2 ? n - 2 : 0);
  const auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

  std::vector<double> p(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    std::vector<double> v(m);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      v[i] = at(k + 1 + i, k);
      norm2 += v[i] * v[i];
    }
    t.d[k] = at(k, k);
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) {
      t.e[k] = 0.0;
      continue;
    }
    const double alpha = v[0] > 0.0 ? -norm : norm;
    v[0] -= alpha;
    const double vnorm = std::sqrt(norm2 - 2.0 * alpha * at(k + 1, k) + alpha * alpha);
    if (vnorm == 0.0) {
      t.e[k] = at(k + 1, k);
      continue;
    }
    for (double& vi : v) vi /= vnorm;
    t.e[k] = alpha;

    // p = A22 v, c = v^T p, w = p - c v, A22 -= 2 (v w^T + w v^T).
    double c = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double* row = &a[(k + 1 + i) * n + k + 1];
      double s = 0.0;
      for (std::size_t j = 0; j < m; ++j) s += row[j] * v[j];
      p[i] = s;
      c += v[i] * s;
    }
    for (std::size_t i = 0; i < m; ++i) p[i] -= c * v[i];
    for (std::size_t i = 0; i < m; ++i) {
      double* row = &a[(k + 1 + i) * n + k + 1];
      const double vi = 2.0 * v[i];
      const double pi = 2.0 * p[i];
      for (std::size_t j = 0; j < m; ++j) row[j] -= vi * p[j] + pi * v[j];
    }
    t.reflect[k] = std::move(v);
  }
  if (n >= 2) {
    t.d[n - 2] = at(n - 2, n - 2);
    t.e[n - 2] = at(n - 1, n - 2);
  }
  if (n >= 1) t.d[n - 1] = at(n - 1, n - 1);
  return t;
}

// Solves (T - sigma I) x = b by Gaussian elimination with partial pivoting;
// zero pivots are replaced by `tiny`.
std::vector<double> shifted_tridiagonal_solve(const std::vector<double>& d, const std::vector<double>& e,
                                              double sigma, std::vector<double> b, double tiny) {
  const std::size_t n = d.size();
  std::vector<double> dd(n), du(n, 0.0), du2(n, 0.0), dl(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) dd[i] = d[i] - sigma;
  for (std::size_t i = 0; i + 1 < n; ++i) du[i] = dl[i] = e[i];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(dd[i]) >= std::abs(dl[i])) {
      if (dd[i] == 0.0) dd[i] = tiny;
      const double f = dl[i] / dd[i];
      dd[i + 1] -= f * du[i];
      b[i + 1] -= f * b[i];
    } else {
      const double f = dd[i] / dl[i];
      dd[i] = dl[i];
      const double next = dd[i + 1];
      dd[i + 1] = du[i] - f * next;
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -f * du2[i];
      }
      du[i] = next;
      const double bi = b[i];
      b[i] = b[i + 1];
      b[i + 1] = bi - f * b[i + 1];
    }
  }
  if (dd[n - 1] == 0.0) dd[n - 1] = tiny;
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    if (k + 1 < n) s -= du[k] * b[k + 1];
    if (k + 2 < n) s -= du2[k] * b[k + 2];
    b[k] = s / dd[k];
  }
  return b;
}

void normalize(std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  s = std::sqrt(s);
  for (double& v : x) v /= s;
}

}  // namespace

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e, int max_sweeps) {
  const std::size_t n = d.size();
  if (n == 0) return d;
  e.resize(n, 0.0);
  e[n - 1] = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    int sweeps = 0;
    for (;;) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        const double scale = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * scale) break;
      }
      if (m == l) break;
      if (++sweeps > max_sweeps) {
        throw ConvergenceError("QL iteration did not converge for eigenvalue " + std::to_string(l),
                               d[l]);
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool deflated = false;
      for (std::size_t i = m; i-- > l;) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

SymmetricEigen symmetric_eigen(std::vector<double> a, std::size_t n, int max_sweeps) {
  if (a.size() != n * n) throw DomainError("symmetric_eigen: matrix size does not match n");
  SymmetricEigen out;
  if (n == 0) return out;
  Tridiagonal t = householder_reduce(a, n);
  std::vector<double> ascending = tridiagonal_eigenvalues(t.d, t.e, max_sweeps);
  out.values.assign(ascending.rbegin(), ascending.rend());

  const double top = out.values.front();
  double norm = 0.0;
  for (double v : out.values) norm = std::max(norm, std::abs(v));
  const double tiny = std::max(norm, 1e-300) * std::numeric_limits<double>::epsilon();
  const double sigma = top + 4.0 * tiny;
  std::vector<double> y(n, 1.0 / std::sqrt(static_cast<double>(n)));
  for (int it = 0; it < 3; ++it) {
    y = shifted_tridiagonal_solve(t.d, t.e, sigma, std::move(y), tiny);
    normalize(y);
  }
  for (std::size_t k = t.reflect.size(); k-- > 0;) {
    const auto& v = t.reflect[k];
    if (v.empty()) continue;
    double dot = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) dot += v[i] * y[k + 1 + i];
    for (std::size_t i = 0; i < v.size(); ++i) y[k + 1 + i] -= 2.0 * dot * v[i];
  }
  normalize(y);
  out.top_vector = std::move(y);
  return out;
}

}  // namespace crit::linalg
