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

/// Special functions the kernels are built from. All functions are pure and
/// throw DomainError outside their stated domain.

namespace crit::specfun {

/// Largest partial wave the library supports.
inline constexpr int max_ell = 10;

inline constexpr double euler_gamma = 0.57721566490153286061;

/// Modified Bessel function K0(x), x > 0.
double bessel_k0(double x);
/// Modified Bessel function K1(x), x > 0.
double bessel_k1(double x);
/// exp(x) K0(x); finite for all x > 0.
double bessel_k0_scaled(double x);
/// exp(x) K1(x).
double bessel_k1_scaled(double x);

/// K_{l+1/2}(x) from the elementary closed form and upward recurrence.
double bessel_k_half(int ell, double x);
/// I_{l+1/2}(x): power series for x <= 30, upward recurrence beyond.
double bessel_i_half(int ell, double x);
/// exp(x) K_{l+1/2}(x).
double bessel_k_half_scaled(int ell, double x);
/// exp(-x) I_{l+1/2}(x).
double bessel_i_half_scaled(int ell, double x);

/// Legendre polynomial P_l(y), |y| <= 1.
double legendre_p(int ell, double y);
/// Same recurrence without the domain check; callers guarantee |y| <= 1 up to rounding.
double legendre_p_unchecked(int ell, double y) noexcept;

/// Legendre function of the second kind Q_l(x), x > 1. Arguments closer to
/// 1 than 1e-12 raise DiagonalError: the log singularity belongs to the caller.
double legendre_q(int ell, double x);
/// Q_l(1 + xm1) for xm1 > 0, keeping full precision of the distance to 1.
double legendre_q_shifted(int ell, double xm1);

/// Bickley functions Ki_n(x) = int_0^inf exp(-x cosh t) / cosh^n t dt for n = 1, 2.
/// Ki_1(x) equals k0_tail(x); this version uses the integrated ascending series
/// for x <= 2 and a fixed 32-point Gauss rule above, so it is much cheaper.
double bickley_ki1(double x);
/// Ki_2(x) = x (K1(x) - Ki_1(x)).
double bickley_ki2(double x);

/// int_y^inf K0(z) dz, y > 0.
double k0_tail(double y);
/// F(y) = K1(y) + pi/2 - int_y^inf K0(z) dz.
double f_function(double y);
/// H(x) = 1 + (2/pi) F(x).
double h_function(double x);

}  // namespace crit::specfun
