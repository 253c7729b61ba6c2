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

#include <filesystem>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace crit {

/// How fast x v(x) falls off between the two far sample points.
enum class DecayClass { faster_than_inverse_r, borderline, slower };

enum class Interpolation { cubic_spline, linear };

/// A validated radial shape v(x) >= 0 on (0, inf) in the dimensionless
/// variable x = r / R. Immutable after construction; evaluation is thread-safe.
///
/// Construction checks, on 1000 log-spaced points over [1e-6, 1e3]:
///   * v(x) >= 0 (values in [-1e-12, 0) are treated as round-off and clamped),
///   * origin exponent s > -1 where v ~ x^s near 0,
///   * x v(x) decreasing between x = 100 and x = 1000.
class Potential {
 public:
  using Shape = std::function<double(double)>;

  /// Pass NaN as origin_exponent to estimate it from the slope of ln v
  /// between x = 1e-6 and 1e-5.
  Potential(std::string name, Shape shape, double origin_exponent);

  double operator()(double x) const {
    const double v = (*shape_)(x);
    return v > 0.0 ? v : 0.0;
  }
  double eval(double x) const { return (*this)(x); }

  const std::string& name() const noexcept { return name_; }
  double origin_exponent() const noexcept { return origin_exponent_; }
  DecayClass decay_class() const noexcept { return decay_; }
  /// True when v vanishes at every validation-grid point.
  bool vanishes() const noexcept { return vanishes_; }

  /// The shape v(x / lambda); same origin exponent.
  Potential rescaled(double lambda) const;

 private:
  std::string name_;
  std::shared_ptr<const Shape> shape_;
  double origin_exponent_;
  DecayClass decay_ = DecayClass::faster_than_inverse_r;
  bool vanishes_ = false;
};

namespace potentials {

enum class Builtin { exp, sech2, gauss, xexp };

/// exp(-x), 1/cosh^2(x), exp(-x^2), x exp(-x).
Potential builtin(Builtin which);
/// Throws ConfigError for an unknown name.
Potential builtin(std::string_view name);
const std::vector<std::string>& builtin_names();
/// Human-readable formula for a builtin name.
std::string builtin_formula(std::string_view name);

/// Potential from an expression in `x`; see crit::Expression for the grammar.
Potential parse_expression(std::string_view source);

/// Piecewise interpolant through tabulated (x, v) data. Below the first
/// abscissa it continues as c x^s through the first two points, beyond the
/// last as c exp(-kappa x) through the last two.
class TableInterpolant {
 public:
  TableInterpolant(std::vector<double> xs, std::vector<double> vs, Interpolation interp);

  double operator()(double x) const;
  std::size_t size() const noexcept { return xs_.size(); }
  Interpolation interpolation() const noexcept { return interp_; }

 private:
  std::vector<double> xs_;
  std::vector<double> vs_;
  std::vector<double> second_;  // spline second derivatives
  Interpolation interp_;
  double head_exponent_ = 0.0;
  double tail_rate_ = 0.0;
};

/// Reads a two-column `x v` text file (whitespace or comma separated, `#`
/// comments). Throws IoError, or FormatError with the 1-based line number.
TableInterpolant read_table(const std::filesystem::path& path, Interpolation interp);
Potential load_table(const std::filesystem::path& path, Interpolation interp);
/// Writes `x v` pairs with round-trip precision.
void save_table(const Potential& pot, const std::filesystem::path& path, std::span<const double> xs);

/// Log-spaced validation grid: 1000 points over [1e-6, 1e3].
std::vector<double> validation_grid();

/// Where a potential comes from, as written on the command line:
/// a builtin name, `expr:<expression>`, or `table:<path>`.
struct PotentialSpec {
  enum class Source { builtin, expression, table };
  Source source = Source::builtin;
  std::string text;
  Interpolation interpolation = Interpolation::cubic_spline;
};

PotentialSpec parse_potential_spec(std::string_view text, Interpolation interp = Interpolation::cubic_spline);
Potential make_potential(const PotentialSpec& spec);

}  // namespace potentials
}  // namespace crit
