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

#include <functional>
#include <optional>
#include <vector>

#include "critcoupling/parallel.hpp"
#include "critcoupling/potentials.hpp"
#include "critcoupling/quadrature.hpp"

/// Variational upper limits on the critical coupling. With the trial family
/// phi(x) ~ x^{(ap-1)/2} v(x)^{p/2} the Rayleigh quotient gives
///
///   g_c <= alpha N / (2 D),   N = int x^{ap-1} v^p dx,
///   D = int dx F(x) int_0^x dy F(y) G(x, y),   F = x^{(ap-1)/2} v^{(p+1)/2},
///
/// where G is a pointwise lower bound on the Green function. The massless
/// bounds use a = 1.

namespace crit::bounds {

enum class BoundMethod { variational_massless, simplified_massless, variational_massive };

const char* method_name(BoundMethod m) noexcept;
/// Accepts "variational-massless", "simplified-massless", "variational-massive".
BoundMethod parse_method(const char* name);

struct Range {
  double lo;
  double hi;
};

struct BoundRequest {
  Potential pot;
  int ell = 0;
  double beta = 0.0;
  double alpha = 2.0;
  BoundMethod method = BoundMethod::variational_massless;
  Range p_range{0.5, 6.0};
  Range a_range{1.0, 2.0};
  quadrature::GridLayout grid = quadrature::default_layout();

  /// Throws ConfigError for inconsistent requests.
  void validate() const;
};

struct BoundResult {
  double value = 0.0;
  double p_opt = 0.0;
  std::optional<double> a_opt;
  /// Difference to the same bound on a coarser rule (absolute).
  double integral_error = 0.0;
  int evaluations = 0;
  /// Set when p_opt (or a_opt) lies within 1e-3 of its range end.
  bool boundary_flag = false;
};

/// Kernel G(x, y) for y < x, as used in the denominator.
using LowerKernel = std::function<double(double x, double y)>;

/// Evaluates alpha N / (2 D) for many (p, a) on a fixed rule. Kernel values
/// on the (outer, inner) node pairs do not depend on (p, a) and are computed
/// once at construction.
class BoundEvaluator {
 public:
  BoundEvaluator(const Potential& pot, LowerKernel kernel,
                 const quadrature::GridLayout& layout = quadrature::default_layout(),
                 const quadrature::InnerRule& inner = quadrature::triangular_inner_rule(),
                 parallel::Execution exec = parallel::Execution::parallel);

  double operator()(double p, double a, double alpha) const;
  /// Numerator and denominator integrals separately.
  double numerator(double p, double a) const;
  double denominator(double p, double a) const;

  std::size_t outer_size() const noexcept { return x_.size(); }
  std::size_t inner_size() const noexcept { return s_.size(); }
  /// Row-major (outer, inner) kernel cache.
  const std::vector<double>& kernel_cache() const noexcept { return cache_; }

 private:
  std::vector<double> x_, w_, log_x_, log_v_;
  std::vector<double> s_, sw_, log_s_;
  std::vector<double> log_v_inner_;  // ln v(x_i s_j), row-major
  std::vector<double> cache_;
};

/// The massless bound for fixed p (a = 1).
double bound_massless(const Potential& pot, int ell, double p, double alpha);
/// The massless bound with ln((x+y)/(x-y)) replaced by 2y/x; l = 0 only.
double bound_massless_simplified(const Potential& pot, double p, double alpha);
/// The massive bound with the minorized kernel for fixed (p, a).
double bound_massive(const Potential& pot, int ell, double beta, double p, double a, double alpha);

/// Kernel a method uses.
LowerKernel method_kernel(BoundMethod method, int ell, double beta);

/// Minimizes the bound over p (and over a for the massive method when the
/// a range is nondegenerate). Throws DivergenceError when the integrals do
/// not exist for the requested ranges.
BoundResult minimize_bound(const BoundRequest& req);

}  // namespace crit::bounds
