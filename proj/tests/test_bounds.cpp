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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "critcoupling/bounds.hpp"
#include "critcoupling/error.hpp"
#include "critcoupling/kernels.hpp"
#include "critcoupling/potentials.hpp"
#include "oracles.hpp"

namespace b = crit::bounds;
namespace pot = crit::potentials;
using std::numbers::pi;

namespace {

// alpha N / (2 D) for v = e^-x, l = 0, a = 1, by nested double-exponential rules.
double massless_exp_oracle(double p, double alpha) {
  const auto F = [p](double x) { return std::pow(x, 0.5 * (p - 1)) * std::exp(-0.5 * (p + 1) * x); };
  const double num = std::tgamma(p) / std::pow(p, p);
  const double den = oracle::exp_sinh([&](double x) {
    const double inner = oracle::tanh_sinh([&](double s) { return F(x * s) * std::log((1 + s) / (1 - s)) / pi; },
                                           0.0, 1.0, 1e-12);
    return F(x) * x * inner;
  }, 0.0, 1e-12);
  return alpha * num / (2 * den);
}

}  // namespace

TEST(Simplified, ClosedFormAtPOne) {
  const double want = pi / (2 * (std::log(2.0) - 0.5));
  EXPECT_NEAR(b::bound_massless_simplified(pot::builtin("exp"), 1.0, 2.0), want, 1e-9);
}

TEST(Massless, MatchesNestedOracle) {
  for (double p : {1.0, 1.5, 2.5}) {
    const double want = massless_exp_oracle(p, 2.0);
    EXPECT_NEAR(b::bound_massless(pot::builtin("exp"), 0, p, 2.0), want, 1e-8 * want) << p;
  }
}

TEST(Bounds, LinearInAlpha) {
  const auto e = pot::builtin("sech2");
  EXPECT_DOUBLE_EQ(b::bound_massless(e, 1, 1.7, 4.0), 2.0 * b::bound_massless(e, 1, 1.7, 2.0));
  EXPECT_DOUBLE_EQ(b::bound_massive(e, 0, 1.0, 1.7, 1.5, 3.0), 1.5 * b::bound_massive(e, 0, 1.0, 1.7, 1.5, 2.0));
}

TEST(Bounds, ScaleCovariance) {
  const auto e = pot::builtin("gauss");
  const auto wide = e.rescaled(3.0);
  EXPECT_NEAR(3.0 * b::bound_massless(wide, 0, 1.5, 2.0), b::bound_massless(e, 0, 1.5, 2.0), 1e-10);
  EXPECT_NEAR(3.0 * b::bound_massive(wide, 0, 0.5, 1.5, 1.3, 2.0), b::bound_massive(e, 0, 1.5, 1.5, 1.3, 2.0), 1e-8);
}

TEST(Bounds, SimplifiedKernelIsWeaker) {
  // 2y / (pi x) <= Q_0 / pi on y < x, so the simplified bound lies above the variational one.
  for (double y : {0.01, 0.3, 0.9}) EXPECT_LE(2 * y / pi, crit::kernels::g_massless(0, 1.0, y));
  for (const auto& name : pot::builtin_names()) {
    const auto v = pot::builtin(name);
    for (double p : {0.8, 1.5, 3.0}) {
      EXPECT_GT(b::bound_massless_simplified(v, p, 2.0), b::bound_massless(v, 0, p, 2.0)) << name << " " << p;
    }
  }
}

TEST(Bounds, UnimodalInP) {
  const auto e = pot::builtin("exp");
  std::vector<double> v;
  for (double p = 0.5; p <= 6.0; p *= 1.15) v.push_back(b::bound_massless(e, 0, p, 2.0));
  int turns = 0;
  for (std::size_t k = 2; k < v.size(); ++k) {
    if ((v[k] - v[k - 1]) * (v[k - 1] - v[k - 2]) < 0) ++turns;
  }
  EXPECT_EQ(turns, 1);
}

TEST(Minimize, MasslessInterior) {
  const auto r = b::minimize_bound({.pot = pot::builtin("exp"), .ell = 0});
  EXPECT_FALSE(r.boundary_flag);
  EXPECT_GT(r.p_opt, 0.5);
  EXPECT_LT(r.p_opt, 6.0);
  EXPECT_FALSE(r.a_opt.has_value());
  EXPECT_LT(r.integral_error, 1e-6 * r.value);
  EXPECT_GT(r.evaluations, 25);
  for (double dp : {-0.05, 0.05}) EXPECT_LE(r.value, b::bound_massless(pot::builtin("exp"), 0, r.p_opt + dp, 2.0));
}

TEST(Minimize, LowerEllGivesLowerBound) {
  const auto v = pot::builtin("gauss");
  double prev = 0.0;
  for (int ell = 0; ell <= 3; ++ell) {
    const double g = b::minimize_bound({.pot = v, .ell = ell}).value;
    EXPECT_GT(g, prev) << ell;
    prev = g;
  }
}

TEST(Minimize, DegenerateARange) {
  b::BoundRequest req{.pot = pot::builtin("exp"), .beta = 1.0, .method = b::BoundMethod::variational_massive};
  req.a_range = {1.3, 1.3};
  const auto r = b::minimize_bound(req);
  ASSERT_TRUE(r.a_opt.has_value());
  EXPECT_EQ(*r.a_opt, 1.3);
  EXPECT_NEAR(r.value, b::bound_massive(req.pot, 0, 1.0, r.p_opt, 1.3, 2.0), 1e-12);
  EXPECT_FALSE(r.boundary_flag);
}

TEST(Minimize, BoundaryFlag) {
  b::BoundRequest req{.pot = pot::builtin("exp")};
  req.p_range = {3.0, 6.0};
  const auto r = b::minimize_bound(req);
  EXPECT_TRUE(r.boundary_flag);
  EXPECT_NEAR(r.p_opt, 3.0, 1e-3);
}

TEST(Minimize, TailDivergence) {
  const auto slow = pot::parse_expression("1/(1+x)^2");
  b::BoundRequest req{.pot = slow, .beta = 1.0, .method = b::BoundMethod::variational_massive};
  req.a_range = {1.0, 2.0};
  EXPECT_THROW(b::minimize_bound(req), crit::DivergenceError);
  req.a_range = {1.0, 1.5};
  EXPECT_NO_THROW(b::minimize_bound(req));
}

TEST(Minimize, VanishingPotentialDiverges) {
  EXPECT_THROW(b::minimize_bound({.pot = pot::parse_expression("0*x")}), crit::DivergenceError);
}

TEST(Request, Validation) {
  const auto e = pot::builtin("exp");
  EXPECT_THROW((b::BoundRequest{.pot = e, .ell = 11}.validate()), crit::ConfigError);
  EXPECT_THROW((b::BoundRequest{.pot = e, .alpha = 0.0}.validate()), crit::ConfigError);
  EXPECT_THROW((b::BoundRequest{.pot = e, .beta = 1.0}.validate()), crit::ConfigError);
  EXPECT_THROW((b::BoundRequest{.pot = e, .method = b::BoundMethod::variational_massive}.validate()),
               crit::ConfigError);
  EXPECT_THROW((b::BoundRequest{.pot = e, .ell = 1, .method = b::BoundMethod::simplified_massless}.validate()),
               crit::ConfigError);
  b::BoundRequest r{.pot = e};
  r.p_range = {0.05, 2.0};
  EXPECT_THROW(r.validate(), crit::ConfigError);
  r = b::BoundRequest{.pot = e, .beta = 1.0, .method = b::BoundMethod::variational_massive};
  r.a_range = {0.5, 1.5};
  EXPECT_THROW(r.validate(), crit::ConfigError);
  EXPECT_THROW(b::bound_massless(e, 0, -1.0, 2.0), crit::DomainError);
}

TEST(Methods, NamesRoundTrip) {
  for (auto m : {b::BoundMethod::variational_massless, b::BoundMethod::simplified_massless,
                 b::BoundMethod::variational_massive}) {
    EXPECT_EQ(b::parse_method(b::method_name(m)), m);
  }
  EXPECT_THROW(b::parse_method("best"), crit::ConfigError);
}

TEST(Evaluator, SerialAndParallelCachesIdentical) {
  const auto v = pot::builtin("xexp");
  const auto kernel = b::method_kernel(b::BoundMethod::variational_massive, 1, 0.7);
  const b::BoundEvaluator serial(v, kernel, crit::quadrature::default_layout(), crit::quadrature::triangular_inner_rule(),
                                 crit::parallel::Execution::serial);
  const b::BoundEvaluator par(v, kernel, crit::quadrature::default_layout(), crit::quadrature::triangular_inner_rule(),
                              crit::parallel::Execution::parallel);
  ASSERT_EQ(serial.kernel_cache().size(), serial.outer_size() * serial.inner_size());
  EXPECT_EQ(serial.kernel_cache(), par.kernel_cache());
  EXPECT_EQ(serial(1.3, 1.2, 2.0), par(1.3, 1.2, 2.0));
}
