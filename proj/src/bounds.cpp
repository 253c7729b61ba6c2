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

#include "critcoupling/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>

#include "critcoupling/error.hpp"
#include "critcoupling/kernels.hpp"

namespace crit::bounds {

namespace {

constexpr double kInvPhi = 0.6180339887498949;
constexpr int kScanP = 25;
constexpr int kScanA = 15;
constexpr double kBoundaryDistance = 1e-3;

double safe_log(double v) { return v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity(); }

// exp(c1 ln x + c2 ln v), with v = 0 giving 0.
double power_weight(double c1, double log_x, double c2, double log_v) {
  if (std::isinf(log_v)) return 0.0;
  return std::exp(c1 * log_x + c2 * log_v);
}

struct Minimum {
  double arg;
  double value;
};

// Golden-section search on [lo, hi] until the bracket is below rel_tol * |arg|.
template <class F>
Minimum golden_section(F&& f, double lo, double hi, double rel_tol) {
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > rel_tol * std::abs(0.5 * (a + b))) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? Minimum{c, fc} : Minimum{d, fd};
}

// Coarse scan over `points`, then golden section in the bracket around the best point.
template <class F>
Minimum scan_then_refine(F&& f, const std::vector<double>& points, double rel_tol) {
  std::size_t best = 0;
  std::vector<double> values(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    values[k] = f(points[k]);
    if (values[k] < values[best]) best = k;
  }
  const double lo = points[best == 0 ? 0 : best - 1];
  const double hi = points[best + 1 == points.size() ? best : best + 1];
  Minimum m = golden_section(f, lo, hi, rel_tol);
  if (values[best] < m.value) m = {points[best], values[best]};
  return m;
}

std::vector<double> log_points(Range r, int n) {
  std::vector<double> out(n);
  const double l0 = std::log(r.lo);
  const double l1 = std::log(r.hi);
  for (int k = 0; k < n; ++k) out[k] = std::exp(l0 + (l1 - l0) * k / (n - 1));
  out.front() = r.lo;
  out.back() = r.hi;
  return out;
}

std::vector<double> linear_points(Range r, int n) {
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = r.lo + (r.hi - r.lo) * k / (n - 1);
  out.back() = r.hi;
  return out;
}

// Power-law rate tau of the tail, v ~ x^{-tau}, from x = 500 and 1000.
double tail_exponent(const Potential& pot) {
  const double near = pot(500.0);
  const double far = pot(1000.0);
  if (far == 0.0 || near == 0.0) return std::numeric_limits<double>::infinity();
  return -std::log(far / near) / std::numbers::ln2;
}

bool near_end(double v, Range r) {
  return std::abs(v - r.lo) < kBoundaryDistance || std::abs(r.hi - v) < kBoundaryDistance;
}

}  // namespace

const char* method_name(BoundMethod m) noexcept {
  switch (m) {
    case BoundMethod::variational_massless:
      return "variational-massless";
    case BoundMethod::simplified_massless:
      return "simplified-massless";
    case BoundMethod::variational_massive:
      return "variational-massive";
  }
  return "unknown";
}

BoundMethod parse_method(const char* name) {
  const std::string_view s(name);
  if (s == "variational-massless") return BoundMethod::variational_massless;
  if (s == "simplified-massless") return BoundMethod::simplified_massless;
  if (s == "variational-massive") return BoundMethod::variational_massive;
  throw ConfigError("unknown bound method '" + std::string(s) + "'");
}

void BoundRequest::validate() const {
  if (ell < 0 || ell > 10) throw ConfigError("l must lie in [0, 10]");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be positive");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ConfigError("beta must be finite and non-negative");
  if (!(p_range.lo >= 0.1 && p_range.hi <= 10.0 && p_range.lo < p_range.hi)) {
    throw ConfigError("p range must satisfy 0.1 <= lo < hi <= 10");
  }
  if (method == BoundMethod::variational_massive) {
    if (!(beta > 0.0)) throw ConfigError("the massive bound requires beta > 0");
    if (!(a_range.lo >= 1.0 && a_range.hi <= 2.0 && a_range.lo <= a_range.hi)) {
      throw ConfigError("a range must satisfy 1 <= lo <= hi <= 2");
    }
  } else {
    if (beta != 0.0) throw ConfigError(std::string(method_name(method)) + " requires beta = 0");
  }
  if (method == BoundMethod::simplified_massless && ell != 0) {
    throw ConfigError("the simplified bound exists for l = 0 only");
  }
}

BoundEvaluator::BoundEvaluator(const Potential& pot, LowerKernel kernel, const quadrature::GridLayout& layout,
                               const quadrature::InnerRule& inner, parallel::Execution exec) {
  const auto grid = quadrature::semi_infinite_grid(layout);
  x_ = grid.nodes;
  w_ = grid.weights;
  s_ = inner.nodes;
  sw_ = inner.weights;
  const std::size_t n = x_.size();
  const std::size_t m = s_.size();
  log_x_.resize(n);
  log_v_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    log_x_[i] = std::log(x_[i]);
    log_v_[i] = safe_log(pot(x_[i]));
  }
  log_s_.resize(m);
  for (std::size_t j = 0; j < m; ++j) log_s_[j] = std::log(s_[j]);

  log_v_inner_.assign(n * m, 0.0);
  cache_.assign(n * m, 0.0);
  parallel::for_each_index(n, exec, [&](std::size_t i) {
    const double x = x_[i];
    for (std::size_t j = 0; j < m; ++j) {
      const double y = x * s_[j];
      const double v = pot(y);
      log_v_inner_[i * m + j] = safe_log(v);
      cache_[i * m + j] = kernel(x, y);
    }
  });
}

double BoundEvaluator::numerator(double p, double a) const {
  const double c1 = a * p - 1.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < x_.size(); ++i) sum += w_[i] * power_weight(c1, log_x_[i], p, log_v_[i]);
  return sum;
}

double BoundEvaluator::denominator(double p, double a) const {
  const double c1 = 0.5 * (a * p - 1.0);
  const double c2 = 0.5 * (p + 1.0);
  const std::size_t m = s_.size();
  std::vector<double> row(x_.size(), 0.0);
  for (std::size_t i = 0; i < x_.size(); ++i) {
    const double fx = power_weight(c1, log_x_[i], c2, log_v_[i]);
    if (fx == 0.0) continue;
    const double* lv = &log_v_inner_[i * m];
    const double* k = &cache_[i * m];
    double inner = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      inner += sw_[j] * power_weight(c1, log_x_[i] + log_s_[j], c2, lv[j]) * k[j];
    }
    row[i] = w_[i] * fx * x_[i] * inner;
  }
  return quadrature::pairwise_sum(row);
}

double BoundEvaluator::operator()(double p, double a, double alpha) const {
  const double num = numerator(p, a);
  if (!std::isfinite(num) || !(num > 0.0)) {
    throw DivergenceError("numerator integral int x^(ap-1) v^p dx is not finite and positive at p = " +
                          std::to_string(p));
  }
  const double den = denominator(p, a);
  if (!std::isfinite(den) || !(den > 0.0)) {
    throw DivergenceError("denominator double integral is not finite and positive at p = " + std::to_string(p));
  }
  return alpha * num / (2.0 * den);
}

LowerKernel method_kernel(BoundMethod method, int ell, double beta) {
  switch (method) {
    case BoundMethod::variational_massless:
      return [ell](double x, double y) { return kernels::g_massless(ell, x, y); };
    case BoundMethod::simplified_massless:
      return [](double x, double y) { return 2.0 * y / (std::numbers::pi * x); };
    case BoundMethod::variational_massive:
      return [ell, beta](double x, double y) { return kernels::g_minorized(ell, beta, x, y); };
  }
  throw ConfigError("unknown bound method");
}

double bound_massless(const Potential& pot, int ell, double p, double alpha) {
  if (!(p > 0.0)) throw DomainError("bound_massless: p must be positive");
  BoundRequest req{.pot = pot, .ell = ell, .alpha = alpha};
  req.p_range = {0.1, 10.0};
  req.validate();
  return BoundEvaluator(pot, method_kernel(BoundMethod::variational_massless, ell, 0.0))(p, 1.0, alpha);
}

double bound_massless_simplified(const Potential& pot, double p, double alpha) {
  if (!(p > 0.0)) throw DomainError("bound_massless_simplified: p must be positive");
  BoundRequest req{.pot = pot, .alpha = alpha, .method = BoundMethod::simplified_massless};
  req.validate();
  return BoundEvaluator(pot, method_kernel(BoundMethod::simplified_massless, 0, 0.0))(p, 1.0, alpha);
}

double bound_massive(const Potential& pot, int ell, double beta, double p, double a, double alpha) {
  if (!(p > 0.0)) throw DomainError("bound_massive: p must be positive");
  BoundRequest req{.pot = pot, .ell = ell, .beta = beta, .alpha = alpha, .method = BoundMethod::variational_massive};
  req.a_range = {a, a};
  req.validate();
  return BoundEvaluator(pot, method_kernel(BoundMethod::variational_massive, ell, beta))(p, a, alpha);
}

BoundResult minimize_bound(const BoundRequest& req) {
  req.validate();
  const bool massive = req.method == BoundMethod::variational_massive;
  const Range a_range = massive ? req.a_range : Range{1.0, 1.0};

  // x^{ap-1} v^p with v ~ x^s near 0 and v ~ x^{-tau} far out.
  const double s = req.pot.origin_exponent();
  if (!(a_range.lo + s > 0.0)) {
    throw DivergenceError("numerator integral diverges at the origin for a = " + std::to_string(a_range.lo));
  }
  const double tau = tail_exponent(req.pot);
  if (!(a_range.hi < tau)) {
    throw DivergenceError("numerator integral diverges at infinity: potential tail ~ x^-" + std::to_string(tau) +
                          " is too slow for a = " + std::to_string(a_range.hi));
  }

  const LowerKernel kernel = method_kernel(req.method, req.ell, req.beta);
  const BoundEvaluator eval(req.pot, kernel, req.grid);

  BoundResult out;
  const auto bound_at = [&](double p, double a) {
    ++out.evaluations;
    return eval(p, a, req.alpha);
  };
  const std::vector<double> p_points = log_points(req.p_range, kScanP);
  const auto best_p = [&](double a) {
    return scan_then_refine([&](double p) { return bound_at(p, a); }, p_points, 1e-7);
  };

  double a_opt = a_range.lo;
  Minimum pm{};
  if (a_range.hi > a_range.lo) {
    const auto value_at_a = [&](double a) { return best_p(a).value; };
    const Minimum am = scan_then_refine(value_at_a, linear_points(a_range, kScanA), 1e-6);
    a_opt = am.arg;
    pm = best_p(a_opt);
    out.boundary_flag = near_end(a_opt, a_range);
  } else {
    pm = best_p(a_opt);
  }
  out.value = pm.value;
  out.p_opt = pm.arg;
  if (massive) out.a_opt = a_opt;
  out.boundary_flag = out.boundary_flag || near_end(pm.arg, req.p_range);

  quadrature::GridLayout coarse = req.grid;
  coarse.n_per_panel = std::max(4, req.grid.n_per_panel * 3 / 4);
  const auto default_inner = quadrature::triangular_inner_rule();
  const BoundEvaluator coarse_eval(
      req.pot, kernel, coarse,
      quadrature::triangular_inner_rule(default_inner.n_per_panel * 3 / 4, default_inner.levels,
                                        default_inner.ratio));
  out.integral_error = std::abs(out.value - coarse_eval(out.p_opt, a_opt, req.alpha));
  return out;
}

}  // namespace crit::bounds
