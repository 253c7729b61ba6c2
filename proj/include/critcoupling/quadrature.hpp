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
#include <functional>
#include <span>
#include <vector>

namespace crit::quadrature {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached n-point Gauss-Legendre rule, 1 <= n <= 128. Thread-safe.
const GaussRule& gauss_legendre(int n);

/// How a grid covers its domain. Semi-infinite maps act on t in (0, 1):
///   rational     x = s t / (1 - t)
///   exponential  x = -s ln(1 - t)
///   truncated    x = X t   (domain [0, X])
enum class DomainMap { rational, exponential, truncated };

/// Composite quadrature rule over a (possibly mapped) domain. Nodes are
/// strictly increasing and all weights are positive.
struct QuadratureGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  DomainMap map = DomainMap::truncated;
  std::vector<double> map_params;
  int n_per_panel = 0;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Composite Gauss-Legendre rule with n_per_panel nodes on each
/// [breakpoints[k], breakpoints[k+1]]. Exact per panel for polynomials of
/// degree <= 2 n_per_panel - 1.
QuadratureGrid gauss_panels(int n_per_panel, std::span<const double> breakpoints);

/// Panel layout in the map variable t in (0, 1). Panels are uniform on
/// [t_low, t_high] and graded geometrically (by `ratio`) toward t = 0 and
/// t = 1 with levels_low and levels_high extra breakpoints. Every panel is
/// then bisected `bisections` times.
struct GridLayout {
  DomainMap map = DomainMap::rational;
  double scale = 1.0;  // s for rational/exponential, X for truncated
  int n_per_panel = 16;
  double t_low = 0.5;
  double t_high = 0.5;
  int uniform_panels = 0;
  int levels_low = 11;
  int levels_high = 11;
  double ratio = 0.25;
  int bisections = 0;

  int panel_count() const noexcept;
};

/// The default grid for one-dimensional integrals over (0, inf): rational
/// map, 24 panels x 16 nodes graded toward both ends of the map variable.
GridLayout default_layout();

/// Layout used by the Nystrom solver; n0 must be a multiple of 8, >= 144.
GridLayout nystrom_layout(int n0, DomainMap map = DomainMap::rational, double scale = 2.0);

QuadratureGrid semi_infinite_grid(const GridLayout& layout);

/// Value together with an error estimate.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

enum class SingularityType { log, power };

struct SingularityHint {
  double location;
  SingularityType type = SingularityType::log;
  double exponent = 0.0;  // for power singularities, s > -1
};

struct Integrand1D {
  std::function<double(double)> f;
  std::vector<SingularityHint> hints;
};

struct AdaptiveOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_panels = 10000;
  int grading_levels = 12;
  double grading_ratio = 0.25;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature on [a, b]; b may be +inf. Hints
/// inside [a, b] get a geometrically graded initial partition. Throws
/// ConvergenceError (carrying the best estimate) after max_panels panels.
Estimate integrate_adaptive(const Integrand1D& f, double a, double b, const AdaptiveOptions& opts);
Estimate integrate_adaptive(const Integrand1D& f, double a, double b, double tol);
Estimate integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol);

/// Relative rule for inner integrals over [0, x]: nodes s in (0, 1), graded
/// toward s = 0 (origin behaviour) and s = 1 (the log-singular diagonal).
struct InnerRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int n_per_panel = 16;
  int levels = 12;
  double ratio = 0.25;
};

InnerRule triangular_inner_rule(int n_per_panel = 16, int levels = 12, double ratio = 0.25);

/// int_0^inf dx w(x) int_0^x dy w(y) K(x, y), with the inner integral done on
/// the scaled inner rule so K is never evaluated on the diagonal. The error
/// estimate compares against a rule with fewer nodes per panel.
Estimate double_integral_triangular(const std::function<double(double, double)>& kernel,
                                    const std::function<double(double)>& weight,
                                    const QuadratureGrid& grid, const InnerRule& inner);
Estimate double_integral_triangular(const std::function<double(double, double)>& kernel,
                                    const std::function<double(double)>& weight,
                                    const QuadratureGrid& grid);

/// Pairwise (cascade) summation in index order.
double pairwise_sum(std::span<const double> values);

}  // namespace crit::quadrature
