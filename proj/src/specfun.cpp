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

#include "critcoupling/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "critcoupling/error.hpp"
#include "critcoupling/quadrature.hpp"

namespace crit::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_positive(double x, const char* fn) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(fn) + ": argument must be positive and finite, got " + std::to_string(x));
  }
}

void require_ell(int ell, const char* fn) {
  if (ell < 0 || ell > max_ell) {
    throw DomainError(std::string(fn) + ": l must lie in [0, " + std::to_string(max_ell) + "], got " +
                      std::to_string(ell));
  }
}

struct KPair {
  double k0;
  double k1;
};

// Ascending series, valid (and used) for 0 < x <= 2.
KPair k_series(double x) {
  const double t = 0.25 * x * x;
  const double log_half = std::log(0.5 * x);
  double i0 = 0.0;
  double i1_sum = 0.0;
  double k0_sum = 0.0;
  double k1_sum = 0.0;
  double term0 = 1.0;  // t^k / (k!)^2
  double term1 = 1.0;  // t^k / (k! (k+1)!)
  double harmonic = 0.0;
  for (int k = 0; k < 60; ++k) {
    if (k > 0) {
      term0 *= t / (static_cast<double>(k) * k);
      term1 *= t / (static_cast<double>(k) * (k + 1));
      harmonic += 1.0 / k;
    }
    const double psi1 = -euler_gamma + harmonic;
    const double psi2 = psi1 + 1.0 / (k + 1);
    i0 += term0;
    i1_sum += term1;
    k0_sum += psi1 * term0;
    k1_sum += (psi1 + psi2) * term1;
    if (term0 < kEps * 1e-3 * i0 && term1 < kEps * 1e-3 * i1_sum) break;
  }
  const double i1 = 0.5 * x * i1_sum;
  return KPair{-log_half * i0 + k0_sum, 1.0 / x + log_half * i1 - 0.25 * x * k1_sum};
}

// Steed's continued fraction for x > 2; returns exp(x) K0 and exp(x) K1.
KPair k_continued_fraction_scaled(double x) {
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i < 10000; ++i) {
    a -= 2 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  h *= a1;
  const double k0s = std::sqrt(kPi / (2.0 * x)) / s;
  return KPair{k0s, k0s * (x + 0.5 - h) / x};
}

KPair k_scaled(double x) {
  if (x <= 2.0) {
    const KPair k = k_series(x);
    const double e = std::exp(x);
    return KPair{k.k0 * e, k.k1 * e};
  }
  return k_continued_fraction_scaled(x);
}

// Q_l(1 + d) by the hypergeometric expansion in 1/z^2, for z >= 3.
double q_hypergeometric(int ell, double z) {
  double prefactor = 1.0;
  for (int k = 1; k <= ell; ++k) prefactor *= k;
  for (int k = 0; k <= ell; ++k) prefactor /= (k + 0.5);
  prefactor *= std::pow(2.0 * z, -(ell + 1));
  const double w = 1.0 / (z * z);
  const double a = 0.5 * (ell + 1);
  const double b = 0.5 * (ell + 2);
  const double c = ell + 1.5;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 200; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * w;
    sum += term;
    if (term < kEps * 0.1 * sum) break;
  }
  return prefactor * sum;
}

}  // namespace

double bessel_k0(double x) {
  require_positive(x, "bessel_k0");
  if (x <= 2.0) return k_series(x).k0;
  if (x > 745.0) return 0.0;
  return k_continued_fraction_scaled(x).k0 * std::exp(-x);
}

double bessel_k1(double x) {
  require_positive(x, "bessel_k1");
  if (x <= 2.0) return k_series(x).k1;
  if (x > 745.0) return 0.0;
  return k_continued_fraction_scaled(x).k1 * std::exp(-x);
}

double bessel_k0_scaled(double x) {
  require_positive(x, "bessel_k0_scaled");
  return k_scaled(x).k0;
}

double bessel_k1_scaled(double x) {
  require_positive(x, "bessel_k1_scaled");
  return k_scaled(x).k1;
}

double bessel_k_half_scaled(int ell, double x) {
  require_positive(x, "bessel_k_half");
  require_ell(ell, "bessel_k_half");
  double km = std::sqrt(kPi / (2.0 * x));  // K_{1/2}
  if (ell == 0) return km;
  double k = km * (1.0 + 1.0 / x);  // K_{3/2}
  for (int j = 1; j < ell; ++j) {
    const double next = km + (2.0 * j + 1.0) / x * k;
    km = k;
    k = next;
  }
  return k;
}

double bessel_k_half(int ell, double x) {
  const double scaled = bessel_k_half_scaled(ell, x);
  return x > 745.0 ? 0.0 : scaled * std::exp(-x);
}

double bessel_i_half_scaled(int ell, double x) {
  require_positive(x, "bessel_i_half");
  require_ell(ell, "bessel_i_half");
  const double nu = ell + 0.5;
  if (x <= 30.0) {
    // Series of positive terms: (x/2)^nu / Gamma(nu+1) * sum_k (x^2/4)^k / (k! (nu+1)_k).
    const double t = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < 500; ++k) {
      term *= t / ((k + 1.0) * (nu + k + 1.0));
      sum += term;
      if (term < kEps * 0.1 * sum) break;
    }
    return std::exp(nu * std::log(0.5 * x) - std::lgamma(nu + 1.0) - x) * sum;
  }
  // Upward recurrence is stable here since nu <= 10.5 < x.
  const double pref = std::sqrt(2.0 / (kPi * x));
  const double e2 = std::exp(-2.0 * x);
  double im = pref * 0.5 * (1.0 - e2);  // I_{1/2}
  if (ell == 0) return im;
  double i = pref * (0.5 * (1.0 + e2) - 0.5 * (1.0 - e2) / x);  // I_{3/2}
  for (int j = 1; j < ell; ++j) {
    const double next = im - (2.0 * j + 1.0) / x * i;
    im = i;
    i = next;
  }
  return i;
}

double bessel_i_half(int ell, double x) {
  const double scaled = bessel_i_half_scaled(ell, x);
  return x > 709.0 ? std::numeric_limits<double>::infinity() : scaled * std::exp(x);
}

double legendre_p_unchecked(int ell, double y) noexcept {
  if (ell == 0) return 1.0;
  double pm = 1.0;
  double p = y;
  for (int k = 1; k < ell; ++k) {
    const double next = ((2.0 * k + 1.0) * y * p - k * pm) / (k + 1.0);
    pm = p;
    p = next;
  }
  return p;
}

double legendre_p(int ell, double y) {
  require_ell(ell, "legendre_p");
  if (!(std::abs(y) <= 1.0)) throw DomainError("legendre_p: |y| must not exceed 1, got " + std::to_string(y));
  return legendre_p_unchecked(ell, y);
}

double legendre_q_shifted(int ell, double xm1) {
  require_ell(ell, "legendre_q");
  if (!(xm1 > 0.0) || std::isnan(xm1)) {
    throw DiagonalError("legendre_q: argument must exceed 1 (got 1 + " + std::to_string(xm1) + ")");
  }
  if (std::isinf(xm1)) return 0.0;
  const double z = 1.0 + xm1;
  if (z >= 3.0) return q_hypergeometric(ell, z);
  const double q0 = 0.5 * std::log1p(2.0 / xm1);
  if (ell == 0) return q0;
  if (z <= 1.1) {
    // Near the diagonal P_l and Q_l are comparable, so upward recurrence keeps its digits.
    double qm = q0;
    double q = z * q0 - 1.0;
    for (int k = 1; k < ell; ++k) {
      const double next = ((2.0 * k + 1.0) * z * q - k * qm) / (k + 1.0);
      qm = q;
      q = next;
    }
    return q;
  }
  // Miller's backward recurrence, normalised by the closed-form Q_0.
  const double root = std::sqrt(xm1 * (z + 1.0));
  const double rho = (z - root) * (z - root);
  const int extra = static_cast<int>(std::ceil(std::log(1e-18) / std::log(rho))) + 4;
  const int top = ell + extra;
  double q_above = 0.0;
  double q = 1.0;
  double q_ell = top == ell ? q : 0.0;
  for (int k = top; k >= 1; --k) {
    const double below = ((2.0 * k + 1.0) * z * q - (k + 1.0) * q_above) / k;
    q_above = q;
    q = below;
    if (k - 1 == ell) q_ell = q;
  }
  return q_ell * (q0 / q);
}

double legendre_q(int ell, double x) {
  if (!(x > 1.0 + 1e-12) || std::isnan(x)) {
    throw DiagonalError("legendre_q: argument " + std::to_string(x) +
                        " is within 1e-12 of the singular point x = 1");
  }
  return legendre_q_shifted(ell, x - 1.0);
}

double k0_tail(double y) {
  require_positive(y, "k0_tail");
  if (y > 745.0) return 0.0;
  // int_0^inf exp(-y cosh t) / cosh t dt; the integrand decays doubly exponentially.
  const double t_max = std::asinh(50.0 / y) + 5.0;
  quadrature::AdaptiveOptions opts;
  opts.abs_tol = 1e-300;
  opts.rel_tol = 1e-13;
  opts.grading_levels = 0;
  const auto integrand = [y](double t) {
    const double c = std::cosh(t);
    return std::exp(-y * c) / c;
  };
  return quadrature::integrate_adaptive(quadrature::Integrand1D{integrand, {}}, 0.0, t_max, opts).value;
}

namespace {

// e^x int_0^T exp(-x cosh t) / cosh^n t dt for x > 2, with T chosen so the
// dropped tail is below e^-40 of the value. 32 Gauss nodes reach round-off.
double bickley_scaled_gauss(int n, double x) {
  const auto& rule = quadrature::gauss_legendre(32);
  const double half = 0.5 * std::acosh(1.0 + 40.0 / x);
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double t = half * (rule.nodes[k] + 1.0);
    const double sh = std::sinh(0.5 * t);
    const double c = std::cosh(t);
    sum += rule.weights[k] * std::exp(-2.0 * x * sh * sh) / (n == 1 ? c : c * c);
  }
  return half * sum;
}

// int_0^x K0 from the term-wise integrated ascending series.
double k0_integral_series(double x) {
  const double h = 0.5 * x;
  const double lg = std::log(h) + euler_gamma;
  double term = 2.0 * h;  // 2 (x/2)^{2k+1} / (k!)^2
  double harmonic = 0.0;
  double sum = 0.0;
  for (int k = 0; k < 40; ++k) {
    if (k > 0) {
      harmonic += 1.0 / k;
      term *= h * h / (static_cast<double>(k) * k);
    }
    const double inv = 1.0 / (2 * k + 1);
    const double add = term * inv * (harmonic + inv - lg);
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

double bickley_ki1(double x) {
  require_positive(x, "bickley_ki1");
  if (x > 745.0) return 0.0;
  if (x <= 2.0) return 0.5 * kPi - k0_integral_series(x);
  return std::exp(-x) * bickley_scaled_gauss(1, x);
}

double bickley_ki2(double x) {
  require_positive(x, "bickley_ki2");
  if (x > 745.0) return 0.0;
  if (x <= 2.0) return x * (bessel_k1(x) - bickley_ki1(x));
  return std::exp(-x) * bickley_scaled_gauss(2, x);
}

double f_function(double y) {
  require_positive(y, "f_function");
  const double k1 = y > 745.0 ? 0.0 : bessel_k1(y);
  return k1 + 0.5 * kPi - k0_tail(y);
}

double h_function(double x) {
  require_positive(x, "h_function");
  return 1.0 + (2.0 / kPi) * f_function(x);
}

}  // namespace crit::specfun
