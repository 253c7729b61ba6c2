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

#include "critcoupling/potentials.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "critcoupling/error.hpp"
#include "critcoupling/expression.hpp"

namespace crit {

namespace {

constexpr double kNegativityTolerance = 1e-12;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

Potential::Potential(std::string name, Shape shape, double origin_exponent)
    : name_(std::move(name)), shape_(std::make_shared<const Shape>(std::move(shape))) {
  const std::vector<double> grid = potentials::validation_grid();
  bool all_zero = true;
  for (double x : grid) {
    const double v = (*shape_)(x);
    if (!std::isfinite(v)) {
      throw ValidationError("potential '" + name_ + "' is not finite at x = " + fmt(x), x);
    }
    if (v < -kNegativityTolerance) {
      throw ValidationError("potential '" + name_ + "' is negative (v = " + fmt(v) + ") at x = " + fmt(x), x);
    }
    if (v > 0.0) all_zero = false;
  }
  vanishes_ = all_zero;

  if (std::isnan(origin_exponent)) {
    const double v1 = (*this)(1e-6);
    const double v2 = (*this)(1e-5);
    origin_exponent = (v1 > 0.0 && v2 > 0.0) ? std::log(v2 / v1) / std::log(10.0)
                                             : std::numeric_limits<double>::infinity();
  }
  origin_exponent_ = origin_exponent;
  if (!(origin_exponent_ > -1.0)) {
    throw ValidationError("potential '" + name_ + "' is too singular at the origin (v ~ x^" +
                              fmt(origin_exponent_) + ", need exponent > -1)",
                          1e-6);
  }

  const double near = 100.0 * (*this)(100.0);
  const double far = 1000.0 * (*this)(1000.0);
  if (far == 0.0) {
    decay_ = DecayClass::faster_than_inverse_r;
  } else if (near == 0.0 || far > 1.1 * near) {
    decay_ = DecayClass::slower;
  } else if (far > 0.9 * near) {
    decay_ = DecayClass::borderline;
  } else {
    decay_ = DecayClass::faster_than_inverse_r;
  }
  if (decay_ != DecayClass::faster_than_inverse_r) {
    throw ValidationError("potential '" + name_ + "' does not decay faster than 1/x (x v = " + fmt(near) +
                              " at x = 100, " + fmt(far) + " at x = 1000)",
                          1000.0);
  }
}

Potential Potential::rescaled(double lambda) const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigError("rescaling factor must be positive");
  auto inner = shape_;
  return Potential(name_ + " (x/" + fmt(lambda) + ")", [inner, lambda](double x) { return (*inner)(x / lambda); },
                   origin_exponent_);
}

namespace potentials {

std::vector<double> validation_grid() {
  constexpr int n = 1000;
  std::vector<double> g(n);
  const double lo = std::log(1e-6);
  const double hi = std::log(1e3);
  for (int k = 0; k < n; ++k) g[k] = std::exp(lo + (hi - lo) * k / (n - 1));
  g.front() = 1e-6;
  g.back() = 1e3;
  return g;
}

Potential builtin(Builtin which) {
  switch (which) {
    case Builtin::exp:
      return Potential("exp", [](double x) { return std::exp(-x); }, 0.0);
    case Builtin::sech2:
      return Potential("sech2", [](double x) {
        const double c = std::cosh(x);
        return 1.0 / (c * c);
      }, 0.0);
    case Builtin::gauss:
      return Potential("gauss", [](double x) { return std::exp(-x * x); }, 0.0);
    case Builtin::xexp:
      return Potential("xexp", [](double x) { return x * std::exp(-x); }, 1.0);
  }
  throw ConfigError("unknown builtin potential");
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"exp", "sech2", "gauss", "xexp"};
  return names;
}

std::string builtin_formula(std::string_view name) {
  if (name == "exp") return "exp(-x)";
  if (name == "sech2") return "1/cosh(x)^2";
  if (name == "gauss") return "exp(-x^2)";
  if (name == "xexp") return "x*exp(-x)";
  throw ConfigError("unknown builtin potential '" + std::string(name) + "'");
}

Potential builtin(std::string_view name) {
  if (name == "exp") return builtin(Builtin::exp);
  if (name == "sech2") return builtin(Builtin::sech2);
  if (name == "gauss") return builtin(Builtin::gauss);
  if (name == "xexp") return builtin(Builtin::xexp);
  throw ConfigError("unknown builtin potential '" + std::string(name) + "' (expected exp, sech2, gauss, xexp)");
}

Potential parse_expression(std::string_view source) {
  Expression expr = Expression::parse(source);
  return Potential(std::string(source), [expr = std::move(expr)](double x) { return expr(x); },
                   std::numeric_limits<double>::quiet_NaN());
}

TableInterpolant::TableInterpolant(std::vector<double> xs, std::vector<double> vs, Interpolation interp)
    : xs_(std::move(xs)), vs_(std::move(vs)), interp_(interp) {
  const std::size_t n = xs_.size();
  if (n != vs_.size()) throw ConfigError("table columns differ in length");
  const std::size_t min_points = interp_ == Interpolation::linear ? 2 : 4;
  if (n < min_points) {
    throw ConfigError("table needs at least " + std::to_string(min_points) + " points for " +
                      (interp_ == Interpolation::linear ? "linear" : "cubic-spline") + " interpolation");
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (!(xs_[k] < xs_[k + 1])) throw ConfigError("table abscissae must be strictly increasing");
  }
  if (xs_.front() < 0.0) throw ConfigError("table abscissae must be non-negative");

  if (interp_ == Interpolation::cubic_spline) {
    // Natural spline: tridiagonal system for the interior second derivatives.
    second_.assign(n, 0.0);
    std::vector<double> u(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double sig = (xs_[i] - xs_[i - 1]) / (xs_[i + 1] - xs_[i - 1]);
      const double p = sig * second_[i - 1] + 2.0;
      second_[i] = (sig - 1.0) / p;
      const double slope_diff =
          (vs_[i + 1] - vs_[i]) / (xs_[i + 1] - xs_[i]) - (vs_[i] - vs_[i - 1]) / (xs_[i] - xs_[i - 1]);
      u[i] = (6.0 * slope_diff / (xs_[i + 1] - xs_[i - 1]) - sig * u[i - 1]) / p;
    }
    second_[n - 1] = 0.0;
    for (std::size_t k = n - 1; k-- > 0;) second_[k] = second_[k] * second_[k + 1] + u[k];
  }

  if (xs_[0] > 0.0 && vs_[0] > 0.0 && vs_[1] > 0.0) {
    head_exponent_ = std::log(vs_[1] / vs_[0]) / std::log(xs_[1] / xs_[0]);
  }
  const double a = vs_[n - 2];
  const double b = vs_[n - 1];
  if (b > 0.0) {
    tail_rate_ = a > 0.0 ? std::log(a / b) / (xs_[n - 1] - xs_[n - 2]) : -std::numeric_limits<double>::infinity();
  }
}

double TableInterpolant::operator()(double x) const {
  const std::size_t n = xs_.size();
  if (x < xs_.front()) {
    if (vs_[0] <= 0.0 || vs_[1] <= 0.0) return 0.0;
    return vs_[0] * std::pow(x / xs_[0], head_exponent_);
  }
  if (x > xs_.back()) {
    if (vs_[n - 1] <= 0.0) return 0.0;
    return vs_[n - 1] * std::exp(-tail_rate_ * (x - xs_[n - 1]));
  }
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t hi = static_cast<std::size_t>(it - xs_.begin());
  if (hi >= n) hi = n - 1;
  const std::size_t lo = hi - 1;
  const double h = xs_[hi] - xs_[lo];
  const double a = (xs_[hi] - x) / h;
  const double b = (x - xs_[lo]) / h;
  double v = a * vs_[lo] + b * vs_[hi];
  if (interp_ == Interpolation::cubic_spline) {
    v += ((a * a * a - a) * second_[lo] + (b * b * b - b) * second_[hi]) * (h * h) / 6.0;
  }
  return v;
}

TableInterpolant read_table(const std::filesystem::path& path, Interpolation interp) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open table file '" + path.string() + "'");
  std::vector<double> xs;
  std::vector<double> vs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    for (char& c : line) {
      if (c == ',' || c == '\t' || c == '\r') c = ' ';
    }
    std::vector<double> fields;
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && line[pos] == ' ') ++pos;
      if (pos >= line.size()) break;
      std::size_t end = line.find(' ', pos);
      if (end == std::string::npos) end = line.size();
      double value = 0.0;
      const char* first = line.data() + pos;
      const char* last = line.data() + end;
      if (*first == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
        throw FormatError("cannot parse number '" + line.substr(pos, end - pos) + "'", line_no);
      }
      fields.push_back(value);
      pos = end;
    }
    if (fields.empty()) continue;
    if (fields.size() != 2) {
      throw FormatError("expected two columns (x v), found " + std::to_string(fields.size()), line_no);
    }
    if (!xs.empty() && !(fields[0] > xs.back())) {
      throw FormatError("abscissae must be strictly increasing", line_no);
    }
    xs.push_back(fields[0]);
    vs.push_back(fields[1]);
  }
  if (in.bad()) throw IoError("error reading table file '" + path.string() + "'");
  try {
    return TableInterpolant(std::move(xs), std::move(vs), interp);
  } catch (const ConfigError& e) {
    throw FormatError(e.what(), line_no);
  }
}

Potential load_table(const std::filesystem::path& path, Interpolation interp) {
  auto table = std::make_shared<const TableInterpolant>(read_table(path, interp));
  return Potential("table:" + path.string(), [table](double x) { return (*table)(x); },
                   std::numeric_limits<double>::quiet_NaN());
}

void save_table(const Potential& pot, const std::filesystem::path& path, std::span<const double> xs) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write table file '" + path.string() + "'");
  out << "# x v(x) for " << pot.name() << '\n';
  char buf[64];
  for (double x : xs) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", x, pot(x));
    out << buf;
  }
  if (!out) throw IoError("error writing table file '" + path.string() + "'");
}

PotentialSpec parse_potential_spec(std::string_view text, Interpolation interp) {
  PotentialSpec spec;
  spec.interpolation = interp;
  if (text.starts_with("expr:")) {
    spec.source = PotentialSpec::Source::expression;
    spec.text = std::string(text.substr(5));
  } else if (text.starts_with("table:")) {
    spec.source = PotentialSpec::Source::table;
    spec.text = std::string(text.substr(6));
  } else {
    spec.source = PotentialSpec::Source::builtin;
    spec.text = std::string(text);
    const auto& names = builtin_names();
    if (std::find(names.begin(), names.end(), spec.text) == names.end()) {
      throw ConfigError("unknown potential '" + spec.text + "' (use exp, sech2, gauss, xexp, expr:..., table:...)");
    }
  }
  if (spec.text.empty()) throw ConfigError("empty potential specification");
  return spec;
}

Potential make_potential(const PotentialSpec& spec) {
  switch (spec.source) {
    case PotentialSpec::Source::builtin:
      return builtin(spec.text);
    case PotentialSpec::Source::expression:
      return parse_expression(spec.text);
    case PotentialSpec::Source::table:
      return load_table(spec.text, spec.interpolation);
  }
  throw ConfigError("unknown potential source");
}

}  // namespace potentials
}  // namespace crit
