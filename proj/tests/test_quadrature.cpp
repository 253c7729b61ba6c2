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

#include "critcoupling/error.hpp"
#include "critcoupling/quadrature.hpp"
#include "oracles.hpp"

namespace q = crit::quadrature;
using std::numbers::pi;

namespace {

double grid_sum(const q::QuadratureGrid& g, double (*f)(double)) {
  std::vector<double> terms(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) terms[k] = g.weights[k] * f(g.nodes[k]);
  return q::pairwise_sum(terms);
}

}  // namespace

TEST(GaussLegendre, ExactForPolynomials) {
  for (int n : {1, 2, 5, 16, 33, 64, 128}) {
    const auto& r = q::gauss_legendre(n);
    ASSERT_EQ(r.nodes.size(), static_cast<std::size_t>(n));
    for (int deg = 0; deg <= 2 * n - 1 && deg <= 40; ++deg) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += r.weights[k] * std::pow(r.nodes[k], deg);
      const double exact = deg % 2 == 1 ? 0.0 : 2.0 / (deg + 1);
      EXPECT_NEAR(s, exact, 1e-14) << n << " " << deg;
    }
  }
}

TEST(GaussLegendre, NodesSymmetricAndSorted) {
  const auto& r = q::gauss_legendre(17);
  for (int k = 0; k < 17; ++k) {
    EXPECT_NEAR(r.nodes[k], -r.nodes[16 - k], 1e-15);
    EXPECT_NEAR(r.weights[k], r.weights[16 - k], 1e-15);
    if (k > 0) EXPECT_LT(r.nodes[k - 1], r.nodes[k]);
  }
}

TEST(GaussLegendre, RejectsBadOrder) {
  EXPECT_THROW(q::gauss_legendre(0), crit::DomainError);
  EXPECT_THROW(q::gauss_legendre(129), crit::DomainError);
}

TEST(GaussPanels, CompositeRule) {
  const std::vector<double> bp{0.0, 0.25, 1.0, 3.0};
  const auto g = q::gauss_panels(8, bp);
  EXPECT_EQ(g.size(), 24u);
  EXPECT_NEAR(grid_sum(g, [](double x) { return std::exp(-x); }), 1.0 - std::exp(-3.0), 1e-14);
  EXPECT_THROW(q::gauss_panels(3, bp), crit::ConfigError);
  EXPECT_THROW(q::gauss_panels(65, bp), crit::ConfigError);
  const std::vector<double> bad{0.0, 1.0, 1.0};
  EXPECT_THROW(q::gauss_panels(8, bad), crit::ConfigError);
}

TEST(SemiInfiniteGrid, AllMapsIntegrateDecayingFunctions) {
  for (auto map : {q::DomainMap::rational, q::DomainMap::exponential}) {
    q::GridLayout l = q::default_layout();
    l.map = map;
    l.scale = 1.0;
    const auto g = q::semi_infinite_grid(l);
    EXPECT_NEAR(grid_sum(g, [](double x) { return std::exp(-x); }), 1.0, 1e-12);
    EXPECT_NEAR(grid_sum(g, [](double x) { return std::exp(-x * x); }), std::sqrt(pi) / 2, 1e-10);
    EXPECT_NEAR(grid_sum(g, [](double x) { return std::log(x) * std::exp(-x); }), -std::numbers::egamma, 1e-9);
    for (std::size_t k = 0; k < g.size(); ++k) {
      EXPECT_GT(g.nodes[k], 0.0);
      EXPECT_GT(g.weights[k], 0.0);
    }
  }
}

TEST(SemiInfiniteGrid, TruncatedMapCoversInterval) {
  q::GridLayout l = q::default_layout();
  l.map = q::DomainMap::truncated;
  l.scale = 40.0;
  const auto g = q::semi_infinite_grid(l);
  EXPECT_NEAR(grid_sum(g, [](double) { return 1.0; }), 40.0, 1e-12);
}

TEST(SemiInfiniteGrid, BisectionDoublesPanels) {
  q::GridLayout l = q::nystrom_layout(200);
  const auto g0 = q::semi_infinite_grid(l);
  EXPECT_EQ(g0.size(), 200u);
  l.bisections = 1;
  EXPECT_EQ(q::semi_infinite_grid(l).size(), 400u);
  EXPECT_EQ(l.panel_count(), 50);
  EXPECT_THROW(q::nystrom_layout(100), crit::ConfigError);
  EXPECT_THROW(q::nystrom_layout(201), crit::ConfigError);
}

TEST(SemiInfiniteGrid, RejectsBadLayouts) {
  q::GridLayout l = q::default_layout();
  l.scale = 0.0;
  EXPECT_THROW(q::semi_infinite_grid(l), crit::ConfigError);
  l = q::default_layout();
  l.ratio = 1.0;
  EXPECT_THROW(q::semi_infinite_grid(l), crit::ConfigError);
  l = q::default_layout();
  l.t_low = 0.7;
  l.t_high = 0.3;
  EXPECT_THROW(q::semi_infinite_grid(l), crit::ConfigError);
}

TEST(Adaptive, SmoothIntegrand) {
  const auto e = q::integrate_adaptive([](double x) { return std::sin(x); }, 0.0, pi, 1e-13);
  EXPECT_NEAR(e.value, 2.0, 1e-13);
  EXPECT_LE(e.error, 1e-13);
}

TEST(Adaptive, LogSingularityWithHint) {
  q::Integrand1D f{[](double x) { return std::log(std::abs(x - 0.3)); }, {{0.3}}};
  const auto e = q::integrate_adaptive(f, 0.0, 1.0, 1e-12);
  const double exact = 0.3 * std::log(0.3) + 0.7 * std::log(0.7) - 1.0;
  EXPECT_NEAR(e.value, exact, 1e-11);
}

TEST(Adaptive, PowerSingularityAtEndpoint) {
  q::Integrand1D f{[](double x) { return 1.0 / std::sqrt(x); }, {{0.0, q::SingularityType::power, -0.5}}};
  EXPECT_NEAR(q::integrate_adaptive(f, 0.0, 4.0, 1e-12).value, 4.0, 1e-10);
}

TEST(Adaptive, InfiniteUpperLimit) {
  const auto e = q::integrate_adaptive([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, INFINITY, 1e-12);
  EXPECT_NEAR(e.value, pi / 2, 1e-11);
  const double ki = q::integrate_adaptive([](double x) { return std::exp(-x) / std::sqrt(x); }, 1.0, INFINITY, 1e-12).value;
  EXPECT_NEAR(ki, oracle::exp_sinh([](double x) { return std::exp(-x) / std::sqrt(x); }, 1.0), 1e-11);
}

TEST(Adaptive, RejectsBadInput) {
  auto f = [](double x) { return x; };
  EXPECT_THROW(q::integrate_adaptive(f, 1.0, 0.0, 1e-10), crit::DomainError);
  EXPECT_THROW(q::integrate_adaptive(f, 0.0, 1.0, 1e-16), crit::ConfigError);
  q::AdaptiveOptions o;
  o.max_panels = 20;
  o.abs_tol = 1e-14;
  q::Integrand1D wild{[](double x) { return std::sin(1.0 / x); }, {}};
  EXPECT_THROW(q::integrate_adaptive(wild, 1e-4, 1.0, o), crit::ConvergenceError);
}

TEST(Adaptive, Deterministic) {
  auto f = [](double x) { return std::exp(-x) * std::log(x); };
  const double a = q::integrate_adaptive(f, 0.0, 5.0, 1e-12).value;
  const double b = q::integrate_adaptive(f, 0.0, 5.0, 1e-12).value;
  EXPECT_EQ(a, b);
}

TEST(Triangular, InnerRuleIntegratesOnUnitInterval) {
  const auto r = q::triangular_inner_rule();
  double s = 0.0, sl = 0.0;
  for (std::size_t k = 0; k < r.nodes.size(); ++k) {
    s += r.weights[k];
    sl += r.weights[k] * std::log(r.nodes[k]);
    EXPECT_GT(r.nodes[k], 0.0);
    EXPECT_LT(r.nodes[k], 1.0);
  }
  EXPECT_NEAR(s, 1.0, 1e-14);
  EXPECT_NEAR(sl, -1.0, 1e-8);
}

TEST(Triangular, SeparableKernel) {
  // int_0^inf e^-x int_0^x e^-y dy dx = 1/2
  const auto g = q::semi_infinite_grid(q::default_layout());
  const auto e = q::double_integral_triangular([](double, double) { return 1.0; },
                                              [](double x) { return std::exp(-x); }, g);
  EXPECT_NEAR(e.value, 0.5, 1e-12);
  EXPECT_LT(e.error, 1e-10);
}

TEST(Triangular, LogDiagonalKernel) {
  // int_0^inf int_0^x e^-(x+y) ln(x - y) dy dx = -gamma / 2
  const auto g = q::semi_infinite_grid(q::default_layout());
  const auto e = q::double_integral_triangular([](double x, double y) { return std::log(x - y); },
                                              [](double x) { return std::exp(-x); }, g);
  EXPECT_NEAR(e.value, -0.5 * std::numbers::egamma, 1e-9);
}

TEST(PairwiseSum, MatchesCompensatedReference) {
  std::vector<double> v(100000, 0.1);
  EXPECT_NEAR(q::pairwise_sum(v), 10000.0, 1e-9);
  EXPECT_EQ(q::pairwise_sum(std::vector<double>{}), 0.0);
}
