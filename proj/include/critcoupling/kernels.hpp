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

#include "critcoupling/potentials.hpp"

/// Partial-wave Green functions of the kinetic operator sqrt(p^2 + m^2) - m
/// at zero binding energy, in the dimensionless variables x = r/R and
/// beta = mR. Every kernel behaves like -(1/pi) ln|x - y| near the diagonal;
/// arguments with |x - y| / (x + y) < 1e-12 raise DiagonalError.

namespace crit::kernels {

enum class Variant { massless_exact, massive_minorized, massive_exact };

struct KernelSpec {
  int ell = 0;
  double beta = 0.0;
  Variant variant = Variant::massless_exact;

  /// Throws ConfigError unless 0 <= ell <= 10, beta >= 0, and the variant
  /// matches beta (massless iff beta == 0).
  void validate() const;
};

inline constexpr double diagonal_threshold = 1e-12;

/// True when (x, y) is too close to the diagonal for point evaluation.
bool near_diagonal(double x, double y) noexcept;

/// G_l(0; x, y) = Q_l((x^2 + y^2) / (2 x y)) / pi.
double g_massless(int ell, double x, double y);

/// Nonrelativistic kernel (2 beta / (2l + 1)) x_<^{l+1} x_>^{-l}.
double script_s(int ell, double beta, double x, double y);

/// beta int_{|x-y|}^{x+y} du K1(beta u) P_l((x^2 + y^2 - u^2) / (2 x y)).
/// Closed forms for l = 0, 1; adaptive quadrature otherwise.
double script_g(int ell, double beta, double x, double y);
/// The same quantity always by adaptive quadrature (used to cross-check).
double script_g_quadrature(int ell, double beta, double x, double y);

/// 2 beta sqrt(x y) K_{l+1/2}(beta x_>) I_{l+1/2}(beta x_<); finite on the diagonal.
double script_t(int ell, double beta, double x, double y);

/// Lower bound (1/pi) G + S - T/2 on the massive Green function.
double g_minorized(int ell, double beta, double x, double y);

/// Massive Green function by adaptive quadrature of
/// (beta/2) int_{|x-y|}^{x+y} du H(beta u) P_l(cos theta(u)), absolute tolerance 1e-9.
double g_massive_exact(int ell, double beta, double x, double y);

/// Massive Green function through the split
///   (1/pi) G + S - (1/pi) int_0^inf dt T_l(beta cosh t; x, y) / cosh^2 t,
/// which follows from writing the K0 tail in its cosh representation and
/// doing the u integral in closed form. Used for matrix assembly.
double g_massive_fast(int ell, double beta, double x, double y);

/// The Green function a KernelSpec selects (massive_exact uses g_massive_fast).
double green(const KernelSpec& spec, double x, double y);

/// K_l(x, y) = v(x)^{1/2} G_l(x, y) v(y)^{1/2}, evaluated with ordered
/// arguments so that swapping x and y gives the identical double.
double symmetric_kernel(const KernelSpec& spec, const Potential& pot, double x, double y);

}  // namespace crit::kernels
