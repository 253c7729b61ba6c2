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

#include "critcoupling/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "critcoupling/error.hpp"
#include "critcoupling/quadrature.hpp"
#include "critcoupling/specfun.hpp"

namespace crit::kernels {

namespace {

constexpr double kPi = std::numbers::pi;

struct Ordered {
  double lo;
  double hi;
};

Ordered order(double x, double y) { return x <= y ? Ordered{x, y} : Ordered{y, x}; }

void require_point(double x, double y, const char* fn) {
  if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
    throw DomainError(std::string(fn) + ": arguments must be positive and finite");
  }
}

void require_beta(double beta, const char* fn) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError(std::string(fn) + ": beta must be positive and finite");
  }
}

void require_ell(int ell, const char* fn) {
  if (ell < 0 || ell > specfun::max_ell) {
    throw DomainError(std::string(fn) + ": l must lie in [0, 10]");
  }
}

void require_off_diagonal(double x, double y, const char* fn) {
  if (near_diagonal(x, y)) {
    throw DiagonalError(std::string(fn) + ": (x, y) lies on the log-singular diagonal");
  }
}

// cos(theta) as a function of the separation u, computed as 1 - (u - d)(u + d) / (2ab)
// so it stays accurate next to u = d = |x - y|.
double cos_theta(double u, double lo, double hi) {
  const double d = hi - lo;
  const double c = 1.0 - (u - d) * (u + d) / (2.0 * lo * hi);
  return std::clamp(c, -1.0, 1.0);
}

double script_t_ordered(int ell, double beta, double lo, double hi) {
  const double d = hi - lo;
  if (ell == 0) return -std::exp(-beta * d) * std::expm1(-2.0 * beta * lo);
  const double ks = specfun::bessel_k_half_scaled(ell, beta * hi);
  const double is = specfun::bessel_i_half_scaled(ell, beta * lo);
  return 2.0 * beta * std::sqrt(lo * hi) * ks * is * std::exp(-beta * d);
}

double script_g_ordered(int ell, double beta, double lo, double hi);

double script_g_quadrature_ordered(int ell, double beta, double lo, double hi) {
  const double d = hi - lo;
  const double s = hi + lo;
  const auto integrand = [=](double u) {
    const double arg = beta * u;
    if (arg > 745.0) return 0.0;
    return beta * specfun::bessel_k1(arg) * specfun::legendre_p_unchecked(ell, cos_theta(u, lo, hi));
  };
  quadrature::AdaptiveOptions opts;
  opts.abs_tol = 1e-15;
  opts.rel_tol = 1e-13;
  return quadrature::integrate_adaptive(
             quadrature::Integrand1D{integrand, {{d, quadrature::SingularityType::log, 0.0}}}, d, s, opts)
      .value;
}

double script_g_ordered(int ell, double beta, double lo, double hi) {
  const double d = hi - lo;
  const double s = hi + lo;
  const double damp = std::exp(-2.0 * beta * lo);  // exp(-beta s) / exp(-beta d)
  if (ell == 0) {
    const double far = beta * s > 745.0 ? 0.0 : specfun::bessel_k0_scaled(beta * s) * damp;
    return std::exp(-beta * d) * (specfun::bessel_k0_scaled(beta * d) - far);
  }
  if (ell == 1 && beta * s >= 1e-2) {
    const double k0d = specfun::bessel_k0_scaled(beta * d);
    const double k1d = specfun::bessel_k1_scaled(beta * d);
    const double k0s = specfun::bessel_k0_scaled(beta * s) * damp;
    const double k1s = specfun::bessel_k1_scaled(beta * s) * damp;
    const double near = s * k1s / (beta * lo * hi);
    const double far = d * k1d / (beta * lo * hi);
    const double sum = k0d + k0s + near - far;
    // for lo << hi the terms cancel to O(lo / hi); fall back before losing four digits
    if (k0d + k0s + near + far <= 1e4 * std::abs(sum)) return std::exp(-beta * d) * sum;
  }
  return script_g_quadrature_ordered(ell, beta, lo, hi);
}

}  // namespace

void KernelSpec::validate() const {
  if (ell < 0 || ell > specfun::max_ell) throw ConfigError("l must lie in [0, 10], got " + std::to_string(ell));
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ConfigError("beta must be finite and non-negative");
  if (variant == Variant::massless_exact && beta != 0.0) {
    throw ConfigError("the massless kernel requires beta = 0");
  }
  if (variant != Variant::massless_exact && !(beta > 0.0)) {
    throw ConfigError("massive kernels require beta > 0");
  }
}

bool near_diagonal(double x, double y) noexcept { return std::abs(x - y) < diagonal_threshold * (x + y); }

double g_massless(int ell, double x, double y) {
  require_point(x, y, "g_massless");
  require_ell(ell, "g_massless");
  require_off_diagonal(x, y, "g_massless");
  const auto [lo, hi] = order(x, y);
  const double d = hi - lo;
  const double zm1 = (d / lo) * (d / hi) * 0.5;
  return specfun::legendre_q_shifted(ell, zm1) / kPi;
}

double script_s(int ell, double beta, double x, double y) {
  require_point(x, y, "script_s");
  require_ell(ell, "script_s");
  if (!(beta >= 0.0)) throw DomainError("script_s: beta must be non-negative");
  const auto [lo, hi] = order(x, y);
  return 2.0 * beta / (2.0 * ell + 1.0) * lo * std::pow(lo / hi, ell);
}

double script_g(int ell, double beta, double x, double y) {
  require_point(x, y, "script_g");
  require_ell(ell, "script_g");
  require_beta(beta, "script_g");
  require_off_diagonal(x, y, "script_g");
  const auto [lo, hi] = order(x, y);
  return script_g_ordered(ell, beta, lo, hi);
}

double script_g_quadrature(int ell, double beta, double x, double y) {
  require_point(x, y, "script_g_quadrature");
  require_ell(ell, "script_g_quadrature");
  require_beta(beta, "script_g_quadrature");
  require_off_diagonal(x, y, "script_g_quadrature");
  const auto [lo, hi] = order(x, y);
  return script_g_quadrature_ordered(ell, beta, lo, hi);
}

double script_t(int ell, double beta, double x, double y) {
  require_point(x, y, "script_t");
  require_ell(ell, "script_t");
  require_beta(beta, "script_t");
  const auto [lo, hi] = order(x, y);
  return script_t_ordered(ell, beta, lo, hi);
}

double g_minorized(int ell, double beta, double x, double y) {
  require_point(x, y, "g_minorized");
  require_ell(ell, "g_minorized");
  require_beta(beta, "g_minorized");
  require_off_diagonal(x, y, "g_minorized");
  const auto [lo, hi] = order(x, y);
  const double s_term = 2.0 * beta / (2.0 * ell + 1.0) * lo * std::pow(lo / hi, ell);
  return script_g_ordered(ell, beta, lo, hi) / kPi + s_term - 0.5 * script_t_ordered(ell, beta, lo, hi);
}

double g_massive_exact(int ell, double beta, double x, double y) {
  require_point(x, y, "g_massive_exact");
  require_ell(ell, "g_massive_exact");
  require_beta(beta, "g_massive_exact");
  require_off_diagonal(x, y, "g_massive_exact");
  const auto [lo, hi] = order(x, y);
  const double d = hi - lo;
  const auto integrand = [=](double u) {
    return 0.5 * beta * specfun::h_function(beta * u) *
           specfun::legendre_p_unchecked(ell, cos_theta(u, lo, hi));
  };
  quadrature::AdaptiveOptions opts;
  opts.abs_tol = 1e-9;
  opts.rel_tol = 1e-12;
  return quadrature::integrate_adaptive(
             quadrature::Integrand1D{integrand, {{d, quadrature::SingularityType::log, 0.0}}}, d, hi + lo, opts)
      .value;
}

double g_massive_fast(int ell, double beta, double x, double y) {
  require_point(x, y, "g_massive_fast");
  require_ell(ell, "g_massive_fast");
  require_beta(beta, "g_massive_fast");
  require_off_diagonal(x, y, "g_massive_fast");
  const auto [lo, hi] = order(x, y);
  const double s_term = 2.0 * beta / (2.0 * ell + 1.0) * lo * std::pow(lo / hi, ell);
  if (ell == 0) {
    // int_0^inf T_0(beta cosh t) / cosh^2 t dt = Ki_2(beta d) - Ki_2(beta s)
    const double tail = specfun::bickley_ki2(beta * (hi - lo)) - specfun::bickley_ki2(beta * (hi + lo));
    return (script_g_ordered(0, beta, lo, hi) - tail) / kPi + s_term;
  }
  const auto integrand = [=](double t) {
    const double c = std::cosh(t);
    return script_t_ordered(ell, beta * c, lo, hi) / (c * c);
  };
  quadrature::AdaptiveOptions opts;
  opts.abs_tol = 1e-16;
  opts.rel_tol = 1e-13;
  opts.grading_levels = 0;
  const double tail = quadrature::integrate_adaptive(quadrature::Integrand1D{integrand, {}}, 0.0, 20.0, opts).value;
  return (script_g_ordered(ell, beta, lo, hi) - tail) / kPi + s_term;
}

double green(const KernelSpec& spec, double x, double y) {
  switch (spec.variant) {
    case Variant::massless_exact:
      return g_massless(spec.ell, x, y);
    case Variant::massive_minorized:
      return g_minorized(spec.ell, spec.beta, x, y);
    case Variant::massive_exact:
      return g_massive_fast(spec.ell, spec.beta, x, y);
  }
  throw ConfigError("unknown kernel variant");
}

double symmetric_kernel(const KernelSpec& spec, const Potential& pot, double x, double y) {
  const auto [lo, hi] = order(x, y);
  const double v_lo = pot(lo);
  const double v_hi = pot(hi);
  if (near_diagonal(lo, hi)) throw DiagonalError("symmetric_kernel: (x, y) lies on the diagonal");
  if (v_lo == 0.0 || v_hi == 0.0) return 0.0;
  return std::sqrt(v_lo) * green(spec, lo, hi) * std::sqrt(v_hi);
}

}  // namespace crit::kernels
