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

#include "critcoupling/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include "critcoupling/error.hpp"

namespace crit::quadrature {

namespace {

constexpr int kMaxGaussNodes = 128;

GaussRule build_gauss_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p1 = 1.0;
    double p2 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
    }
    pp = n * (z * p1 - p2) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  bool splittable;
};

struct SegmentOrder {
  bool operator()(const Segment& a, const Segment& b) const { return a.error < b.error; }
};

template <class F>
Segment gauss_kronrod_15(const F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double res_k = fc * kWgk[7];
  double res_g = fc * kWg[3];
  double res_abs = std::abs(res_k);
  double fv1[7];
  double fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = f(center - dx);
    fv2[j] = f(center + dx);
    res_k += kWgk[j] * (fv1[j] + fv2[j]);
    res_abs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) res_g += kWg[j / 2] * (fv1[j] + fv2[j]);
  }
  const double mean = 0.5 * res_k;
  double res_asc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) res_asc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

  const double scale = std::abs(half);
  res_k *= half;
  res_g *= half;
  res_abs *= scale;
  res_asc *= scale;

  double err = std::abs(res_k - res_g);
  if (res_asc != 0.0 && err != 0.0) err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  bool at_roundoff = false;
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps) && err <= 50.0 * eps * res_abs) {
    err = 50.0 * eps * res_abs;
    at_roundoff = true;  // splitting cannot improve this panel
  }

  const double width_floor = 64.0 * eps * std::max({std::abs(lo), std::abs(hi), 1e-300});
  return Segment{lo, hi, res_k, err, !at_roundoff && (hi - lo) > width_floor};
}

std::vector<double> graded_breakpoints(double a, double b, const std::vector<double>& hints, int levels,
                                       double ratio) {
  std::vector<double> cuts{a, b};
  for (double h : hints) {
    if (h > a && h < b) cuts.push_back(h);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<double> out = cuts;
  auto is_hint = [&](double x) {
    return std::any_of(hints.begin(), hints.end(), [x](double h) { return h == x; });
  };
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    const bool grade_lo = is_hint(lo);
    const bool grade_hi = is_hint(hi);
    if (!grade_lo && !grade_hi) continue;
    const double reach = (grade_lo && grade_hi) ? 0.5 * (hi - lo) : (hi - lo);
    double d = reach * ratio;
    for (int level = 0; level < levels; ++level, d *= ratio) {
      if (grade_lo) out.push_back(lo + d);
      if (grade_hi) out.push_back(hi - d);
    }
    if (grade_lo && grade_hi) out.push_back(0.5 * (lo + hi));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <class F>
Estimate adaptive_on_finite(const F& f, double a, double b, const std::vector<double>& hints,
                            const AdaptiveOptions& opts) {
  const std::vector<double> cuts = graded_breakpoints(a, b, hints, opts.grading_levels, opts.grading_ratio);
  std::priority_queue<Segment, std::vector<Segment>, SegmentOrder> queue;
  std::vector<Segment> settled;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    Segment s = gauss_kronrod_15(f, cuts[k], cuts[k + 1]);
    total += s.value;
    total_err += s.error;
    if (s.splittable) {
      queue.push(s);
    } else {
      settled.push_back(s);
    }
  }
  int panels = static_cast<int>(cuts.size()) - 1;
  auto converged = [&] { return total_err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };
  while (!converged() && !queue.empty()) {
    if (panels >= opts.max_panels) {
      throw ConvergenceError("adaptive quadrature did not converge within " + std::to_string(opts.max_panels) +
                                 " panels (estimate " + std::to_string(total) + ", error " +
                                 std::to_string(total_err) + ")",
                             total);
    }
    const Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Segment left = gauss_kronrod_15(f, worst.lo, mid);
    const Segment right = gauss_kronrod_15(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    ++panels;
    for (const Segment& s : {left, right}) {
      if (s.splittable) {
        queue.push(s);
      } else {
        settled.push_back(s);
      }
    }
  }
  while (!queue.empty()) {
    settled.push_back(queue.top());
    queue.pop();
  }
  // Fixed summation order: ascending panel position.
  std::sort(settled.begin(), settled.end(), [](const Segment& x, const Segment& y) { return x.lo < y.lo; });
  std::vector<double> values(settled.size());
  std::vector<double> errors(settled.size());
  for (std::size_t k = 0; k < settled.size(); ++k) {
    values[k] = settled[k].value;
    errors[k] = settled[k].error;
  }
  return Estimate{pairwise_sum(values), pairwise_sum(errors)};
}

std::vector<double> breakpoints_in_t(const GridLayout& g) {
  std::vector<double> t;
  t.push_back(0.0);
  for (int k = g.levels_low; k >= 1; --k) t.push_back(g.t_low * std::pow(g.ratio, k));
  t.push_back(g.t_low);
  for (int k = 1; k <= g.uniform_panels; ++k) {
    t.push_back(g.t_low + (g.t_high - g.t_low) * k / g.uniform_panels);
  }
  for (int k = 1; k <= g.levels_high; ++k) t.push_back(1.0 - (1.0 - g.t_high) * std::pow(g.ratio, k));
  t.push_back(1.0);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  for (int b = 0; b < g.bisections; ++b) {
    std::vector<double> finer;
    finer.reserve(2 * t.size());
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
      finer.push_back(t[k]);
      finer.push_back(0.5 * (t[k] + t[k + 1]));
    }
    finer.push_back(t.back());
    t = std::move(finer);
  }
  return t;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1 || n > kMaxGaussNodes) {
    throw DomainError("Gauss-Legendre order must lie in [1, 128], got " + std::to_string(n));
  }
  static const std::vector<GaussRule> rules = [] {
    std::vector<GaussRule> r(kMaxGaussNodes + 1);
    for (int k = 1; k <= kMaxGaussNodes; ++k) r[k] = build_gauss_rule(k);
    return r;
  }();
  return rules[n];
}

QuadratureGrid gauss_panels(int n_per_panel, std::span<const double> breakpoints) {
  if (n_per_panel < 4 || n_per_panel > 64) {
    throw ConfigError("nodes per panel must lie in [4, 64], got " + std::to_string(n_per_panel));
  }
  if (breakpoints.size() < 2) throw ConfigError("at least two breakpoints are required");
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
    if (!(breakpoints[k] < breakpoints[k + 1]) || !std::isfinite(breakpoints[k + 1])) {
      throw ConfigError("breakpoints must be finite and strictly increasing");
    }
  }
  const GaussRule& rule = gauss_legendre(n_per_panel);
  QuadratureGrid grid;
  grid.n_per_panel = n_per_panel;
  grid.map = DomainMap::truncated;
  grid.map_params = {breakpoints.front(), breakpoints.back()};
  grid.nodes.reserve(n_per_panel * (breakpoints.size() - 1));
  grid.weights.reserve(grid.nodes.capacity());
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
    const double c = 0.5 * (breakpoints[k] + breakpoints[k + 1]);
    const double h = 0.5 * (breakpoints[k + 1] - breakpoints[k]);
    for (int j = 0; j < n_per_panel; ++j) {
      grid.nodes.push_back(c + h * rule.nodes[j]);
      grid.weights.push_back(h * rule.weights[j]);
    }
  }
  return grid;
}

int GridLayout::panel_count() const noexcept {
  return (uniform_panels + levels_low + levels_high + 2) << bisections;
}

GridLayout default_layout() { return GridLayout{}; }

GridLayout nystrom_layout(int n0, DomainMap map, double scale) {
  if (n0 % 8 != 0 || n0 < 144) {
    throw ConfigError("Nystrom grid size must be a multiple of 8 and at least 144, got " + std::to_string(n0));
  }
  GridLayout g;
  g.map = map;
  g.scale = scale;
  g.n_per_panel = 8;
  g.t_low = 0.1;
  g.t_high = 0.9;
  g.levels_low = 8;
  g.levels_high = 7;
  g.uniform_panels = n0 / 8 - 17;
  g.ratio = 0.3;
  return g;
}

QuadratureGrid semi_infinite_grid(const GridLayout& layout) {
  if (layout.scale <= 0.0 || !std::isfinite(layout.scale)) throw ConfigError("grid scale must be positive");
  if (!(layout.t_low > 0.0 && layout.t_low <= layout.t_high && layout.t_high < 1.0)) {
    throw ConfigError("grid layout requires 0 < t_low <= t_high < 1");
  }
  if (layout.uniform_panels < 0 || (layout.t_low < layout.t_high && layout.uniform_panels == 0)) {
    throw ConfigError("grid layout needs uniform panels between t_low and t_high");
  }
  if (!(layout.ratio > 0.0 && layout.ratio < 1.0)) throw ConfigError("grading ratio must lie in (0, 1)");
  const std::vector<double> t = breakpoints_in_t(layout);
  QuadratureGrid in_t = gauss_panels(layout.n_per_panel, t);
  QuadratureGrid grid;
  grid.map = layout.map;
  grid.map_params = {layout.scale};
  grid.n_per_panel = layout.n_per_panel;
  grid.nodes.resize(in_t.size());
  grid.weights.resize(in_t.size());
  const double s = layout.scale;
  for (std::size_t k = 0; k < in_t.size(); ++k) {
    const double tk = in_t.nodes[k];
    const double wk = in_t.weights[k];
    switch (layout.map) {
      case DomainMap::rational:
        grid.nodes[k] = s * tk / (1.0 - tk);
        grid.weights[k] = s * wk / ((1.0 - tk) * (1.0 - tk));
        break;
      case DomainMap::exponential:
        grid.nodes[k] = -s * std::log1p(-tk);
        grid.weights[k] = s * wk / (1.0 - tk);
        break;
      case DomainMap::truncated:
        grid.nodes[k] = s * tk;
        grid.weights[k] = s * wk;
        break;
    }
  }
  if (grid.size() < 16) throw ConfigError("a semi-infinite grid needs at least 16 nodes");
  return grid;
}

Estimate integrate_adaptive(const Integrand1D& f, double a, double b, const AdaptiveOptions& opts) {
  if (!(a < b) || std::isnan(a) || std::isnan(b) || !std::isfinite(a)) {
    throw DomainError("integration requires finite a < b");
  }
  if (!(opts.abs_tol > 0.0) && !(opts.rel_tol > 0.0)) throw ConfigError("tolerance must be positive");
  if (std::isfinite(b)) {
    std::vector<double> hints;
    for (const auto& h : f.hints) hints.push_back(h.location);
    return adaptive_on_finite(f.f, a, b, hints, opts);
  }
  // x = a + u / (1 - u), u in [0, 1)
  auto mapped = [&](double u) {
    const double one_minus = 1.0 - u;
    if (one_minus <= 0.0) return 0.0;
    const double x = a + u / one_minus;
    const double val = f.f(x);
    return val == 0.0 ? 0.0 : val / (one_minus * one_minus);
  };
  std::vector<double> hints;
  for (const auto& h : f.hints) {
    if (h.location >= a) {
      const double d = h.location - a;
      hints.push_back(d / (1.0 + d));
    }
  }
  return adaptive_on_finite(mapped, 0.0, 1.0, hints, opts);
}

Estimate integrate_adaptive(const Integrand1D& f, double a, double b, double tol) {
  if (!(tol >= 1e-14)) throw ConfigError("adaptive tolerance must be >= 1e-14");
  AdaptiveOptions opts;
  opts.abs_tol = tol;
  return integrate_adaptive(f, a, b, opts);
}

Estimate integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol) {
  return integrate_adaptive(Integrand1D{f, {}}, a, b, tol);
}

InnerRule triangular_inner_rule(int n_per_panel, int levels, double ratio) {
  std::vector<double> s{0.0, 0.5, 1.0};
  double d = 0.5;
  for (int k = 0; k < levels; ++k) {
    d *= ratio;
    s.push_back(d);
    s.push_back(1.0 - d);
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  const QuadratureGrid g = gauss_panels(n_per_panel, s);
  return InnerRule{g.nodes, g.weights, n_per_panel, levels, ratio};
}

Estimate double_integral_triangular(const std::function<double(double, double)>& kernel,
                                    const std::function<double(double)>& weight,
                                    const QuadratureGrid& grid, const InnerRule& inner) {
  auto evaluate = [&](const InnerRule& rule) {
    std::vector<double> outer(grid.size());
    std::vector<double> row(rule.nodes.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double x = grid.nodes[i];
      const double wx = weight(x);
      if (wx == 0.0) {
        outer[i] = 0.0;
        continue;
      }
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double y = x * rule.nodes[j];
        const double wy = weight(y);
        row[j] = wy == 0.0 ? 0.0 : rule.weights[j] * wy * kernel(x, y);
      }
      outer[i] = grid.weights[i] * wx * x * pairwise_sum(row);
    }
    return pairwise_sum(outer);
  };
  const double fine = evaluate(inner);
  // Same panels, three quarters of the nodes.
  const InnerRule coarse = triangular_inner_rule(std::max(4, inner.n_per_panel * 3 / 4), inner.levels, inner.ratio);
  const double rough = evaluate(coarse);
  return Estimate{fine, std::abs(fine - rough)};
}

Estimate double_integral_triangular(const std::function<double(double, double)>& kernel,
                                    const std::function<double(double)>& weight,
                                    const QuadratureGrid& grid) {
  return double_integral_triangular(kernel, weight, grid, triangular_inner_rule());
}

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace crit::quadrature
