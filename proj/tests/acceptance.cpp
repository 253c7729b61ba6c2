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


// Acceptance run: one PASS/FAIL line per criterion, details indented below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "critcoupling/bounds.hpp"
#include "critcoupling/error.hpp"
#include "critcoupling/kernels.hpp"
#include "critcoupling/nystrom.hpp"
#include "critcoupling/potentials.hpp"
#include "critcoupling/specfun.hpp"
#include "oracles.hpp"
#include "reference_tables.hpp"

namespace {

namespace sf = crit::specfun;
namespace kn = crit::kernels;
using crit::cli::TableRow;

constexpr double pi = std::numbers::pi;
const std::vector<std::string> table_potentials{"exp", "sech2", "gauss", "xexp"};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int failures = 0;

void verdict(int id, bool pass, const std::string& what, double secs) {
  std::printf("criterion %d: %s  %s (%.1f s)\n", id, pass ? "PASS" : "FAIL", what.c_str(), secs);
  std::fflush(stdout);
  if (!pass) ++failures;
}

void print_row(const TableRow& r) {
  const auto& ref = r.ref;
  std::string label = "table " + ref.table + " " + ref.potential + " l=" + std::to_string(ref.ell);
  if (ref.beta > 0) label += " beta=" + std::to_string(ref.beta).substr(0, 4);
  if (ref.a) label += " a=" + std::to_string(*ref.a).substr(0, 4);
  if (!r.error.empty()) {
    std::printf("    %-36s %-4s error: %s\n", label.c_str(), ref.quantity.c_str(), r.error.c_str());
    return;
  }
  std::printf("    %-36s %-4s ref %-8s got %-10.6g dev %+7.3f%%  tol %.1f%%  %s\n", label.c_str(), ref.quantity.c_str(),
              ref.value_text.c_str(), *r.computed, 100 * r.deviation, 100 * ref.tolerance.value_or(0), r.pass ? "ok" : "MISS");
}

bool rows_pass(const std::vector<TableRow>& rows) {
  bool ok = true;
  for (const auto& r : rows) {
    if (r.ref.reference_only) continue;
    print_row(r);
    ok = ok && r.pass;
  }
  return ok;
}

const TableRow* find_row(const std::vector<TableRow>& rows, const std::string& pot, double beta, const std::string& q) {
  for (const auto& r : rows)
    if (r.ref.potential == pot && r.ref.beta == beta && r.ref.quantity == q && r.computed) return &r;
  return nullptr;
}

// --- criteria 1 to 4 ---

std::vector<TableRow> run_rows(const std::string& table) {
  std::vector<TableRow> out;
  if (table == "text") {
    for (const auto& ref : crit::cli::reference_rows_for("text")) out.push_back(crit::cli::compute_cell(ref));
  } else {
    out = crit::cli::run_table(table).rows;
  }
  return out;
}

// Table 2 with the sech2 and xexp reference rows exchanged.
bool table2_exchanged(const std::vector<TableRow>& rows) {
  bool ok = true;
  for (const auto& r : rows) {
    if (!r.computed) return false;
    std::string other = r.ref.potential == "sech2" ? "xexp" : r.ref.potential == "xexp" ? "sech2" : r.ref.potential;
    if (other == r.ref.potential) continue;
    for (const auto& ref : crit::cli::reference_rows_for("2")) {
      if (ref.potential != other || ref.quantity != r.ref.quantity) continue;
      const double dev = (*r.computed - ref.value) / ref.value;
      const bool pass = std::abs(dev) <= *ref.tolerance;
      std::printf("    exchanged: %-5s %-3s vs %-5s ref %-8s dev %+7.3f%%  %s\n", r.ref.potential.c_str(),
                  r.ref.quantity.c_str(), other.c_str(), ref.value_text.c_str(), 100 * dev, pass ? "ok" : "MISS");
      ok = ok && pass;
    }
  }
  return ok;
}

// --- criterion 5 ---

bool inequalities() {
  bool ok = true;
  for (double y : {0.05, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const double k1 = sf::bessel_k1(y), f = sf::f_function(y), tail = sf::k0_tail(y);
    const bool row = k1 < f && f < k1 + pi / 2 && f > k1 + pi / 2 - (pi / 2) * std::exp(-y) && tail < (pi / 2) * std::exp(-y);
    if (!row) std::printf("    inequality fails at y = %g: K1 %.12g F %.12g tail %.12g\n", y, k1, f, tail);
    ok = ok && row;
  }
  return ok;
}

bool minorization(int ell) {
  std::vector<double> pts(20);
  for (int i = 0; i < 20; ++i) pts[i] = 0.05 * std::pow(400.0, i / 19.0);
  bool ok = true;
  for (double beta : {0.1, 1.0, 5.0}) {
    int bad = 0;
    double worst = 0;
    for (double x : pts)
      for (double y : pts) {
        if (x == y) continue;
        const double ex = kn::g_massive_fast(ell, beta, x, y), mi = kn::g_minorized(ell, beta, x, y);
        if (ex < mi) {
          ++bad;
          worst = std::max(worst, (mi - ex) / std::abs(ex));
        }
      }
    std::printf("    minorization l=%d beta=%g: %d of 380 off-diagonal points violate (worst rel %.2e)\n", ell, beta, bad, worst);
    ok = ok && bad == 0;
  }
  return ok;
}

// --- criterion 6 ---

bool dominates(const TableRow* up, const TableRow* gc, const char* what) {
  if (!up || !gc) {
    std::printf("    %s: missing value\n", what);
    return false;
  }
  const double err = up->numerical_error + gc->numerical_error;
  const bool ok = *up->computed >= *gc->computed - err;
  std::printf("    %-30s bound %.6f  g1 %.6f  err %.1e  %s\n", what, *up->computed, *gc->computed, err, ok ? "ok" : "VIOLATED");
  return ok;
}

// --- criterion 8 ---

double q_angular(int ell, double x, double y) {
  const double z = (x * x + y * y) / (2 * x * y);
  return 0.5 * oracle::tanh_sinh([&](double c) { return oracle::legendre(ell, c) / (z - c); }, -1, 1);
}

double script_g_integral(int ell, double beta, double x, double y) {
  return oracle::tanh_sinh([&](double u) {
    const double c = (x * x + y * y - u * u) / (2 * x * y);
    return beta * oracle::bessel_k(1.0, beta * u) * oracle::legendre(ell, std::clamp(c, -1.0, 1.0));
  }, std::abs(x - y), x + y, 1e-13);
}

// beta x y int_{-1}^{1} e^{-beta D} / D P_l(c) dc, with D = |x - y e_c| as the variable
double script_t_integral(int ell, double beta, double x, double y) {
  return beta * oracle::tanh_sinh([&](double u) {
    const double c = (x * x + y * y - u * u) / (2 * x * y);
    return std::exp(-beta * u) * oracle::legendre(ell, std::clamp(c, -1.0, 1.0));
  }, std::abs(x - y), x + y, 1e-14);
}

double f_first_form(double y) {
  return oracle::exp_sinh([](double z) { return oracle::bessel_k(1.0, z) / z; }, y, 1e-13) + pi / 2;
}

struct Agreement {
  double worst = 0;
  bool ok = true;
  void add(double got, double want) {
    const double rel = std::abs(got - want) / std::max(std::abs(want), 1e-300);
    const bool pass = std::abs(got - want) <= 1e-9 * std::abs(want) + 1e-15;
    worst = std::max(worst, rel);
    ok = ok && pass;
  }
};

bool oracle_equivalence() {
  std::mt19937_64 rng(20261019);
  std::uniform_real_distribution<double> logu(std::log(0.1), std::log(10.0));
  std::uniform_real_distribution<double> logb(std::log(0.1), std::log(5.0));
  std::map<std::string, Agreement> checks;
  for (int k = 0; k < 12; ++k) {
    const double x = std::exp(logu(rng)), y = std::exp(logu(rng)), beta = std::exp(logb(rng));
    checks["massless l=0"].add(kn::g_massless(0, x, y), q_angular(0, x, y) / pi);
    checks["massless l=1"].add(kn::g_massless(1, x, y), q_angular(1, x, y) / pi);
    checks["script_g l=0"].add(kn::script_g(0, beta, x, y), script_g_integral(0, beta, x, y));
    checks["script_g l=1"].add(kn::script_g(1, beta, x, y), script_g_integral(1, beta, x, y));
    checks["script_t l=0"].add(kn::script_t(0, beta, x, y), script_t_integral(0, beta, x, y));
    checks["script_t l=1"].add(kn::script_t(1, beta, x, y), script_t_integral(1, beta, x, y));
  }
  for (double y : {0.05, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) checks["F two forms"].add(sf::f_function(y), f_first_form(y));
  bool ok = true;
  for (const auto& [name, a] : checks) {
    std::printf("    %-14s worst rel diff %.2e  %s\n", name.c_str(), a.worst, a.ok ? "ok" : "MISS");
    ok = ok && a.ok;
  }
  return ok;
}

}  // namespace

int main() {
  std::vector<TableRow> t1, t2, t3;
  {
    Stopwatch sw;
    t1 = run_rows("1");
    const bool ok = rows_pass(t1);
    const double s = sw.seconds();
    verdict(1, ok && s < 30, "table 1 (massless l=0)", s);
  }
  {
    Stopwatch sw;
    t2 = run_rows("2");
    const bool ok = rows_pass(t2);
    const double s = sw.seconds();
    std::printf("    with the sech2 and xexp reference rows exchanged: %s\n", table2_exchanged(t2) ? "all ok" : "MISS");
    verdict(2, ok && s < 30, "table 2 (massless l=1)", s);
  }
  {
    Stopwatch sw;
    t3 = run_rows("3");
    const bool ok = rows_pass(t3);
    const double s = sw.seconds();
    verdict(3, ok && s < 600, "table 3 (massive l=0, a=2)", s);
  }
  {
    Stopwatch sw;
    const bool ok = rows_pass(run_rows("text"));
    verdict(4, ok, "intermediate trial exponents", sw.seconds());
  }
  {
    Stopwatch sw;
    const bool ineq = inequalities();
    std::printf("    K1 < F < K1 + pi/2, lower refinement and tail majorization: %s\n", ineq ? "ok" : "MISS");
    const bool m0 = minorization(0);
    const bool m1 = minorization(1);
    const double s = sw.seconds();
    verdict(5, ineq && m0 && m1 && s < 5, "inequalities and kernel minorization", s);
  }
  {
    Stopwatch sw;
    bool ok = true;
    for (const auto& p : table_potentials) {
      ok = dominates(find_row(t1, p, 0, "gup1"), find_row(t1, p, 0, "gc"), ("t1 " + p + " variational").c_str()) && ok;
      ok = dominates(find_row(t1, p, 0, "gup2"), find_row(t1, p, 0, "gc"), ("t1 " + p + " simplified").c_str()) && ok;
      ok = dominates(find_row(t2, p, 0, "gup"), find_row(t2, p, 0, "gc"), ("t2 " + p).c_str()) && ok;
    }
    for (const auto& r : t3) {
      if (r.ref.quantity != "gc") continue;
      const std::string what = "t3 " + r.ref.potential + " beta=" + std::to_string(r.ref.beta).substr(0, 4);
      ok = dominates(find_row(t3, r.ref.potential, r.ref.beta, "gup"), &r, what.c_str()) && ok;
    }
    verdict(6, ok, "bounds dominate the Nystrom g1", sw.seconds());
  }
  {
    Stopwatch sw;
    bool ok = true;
    for (const auto& p : table_potentials) {
      crit::bounds::BoundRequest massless{.pot = crit::potentials::builtin(p)};
      crit::bounds::BoundRequest massive{.pot = crit::potentials::builtin(p), .beta = 1e-4,
                                         .method = crit::bounds::BoundMethod::variational_massive};
      const double b0 = crit::bounds::minimize_bound(massless).value;
      const double b1 = crit::bounds::minimize_bound(massive).value;
      const double dev = (b1 - b0) / b0;
      std::printf("    %-5s massless %.6f  massive beta=1e-4 %.6f  dev %+.3f%%\n", p.c_str(), b0, b1, 100 * dev);
      ok = ok && std::abs(dev) < 0.01;
    }
    for (auto [x, y] : {std::pair{2.0, 1.0}, std::pair{0.5, 3.0}, std::pair{5.0, 4.0}}) {
      const double mi = kn::g_minorized(0, 50.0, x, y), s = kn::script_s(0, 50.0, x, y);
      const double dev = (mi - s) / s;
      std::printf("    beta=50 (%g, %g): minorized %.10g  script_s %.10g  dev %+.2e\n", x, y, mi, s, dev);
      ok = ok && std::abs(dev) < 0.01;
    }
    verdict(7, ok, "massless and large-mass limits", sw.seconds());
  }
  {
    Stopwatch sw;
    verdict(8, oracle_equivalence(), "closed forms vs defining integrals", sw.seconds());
  }
  {
    Stopwatch sw;
    bool ok = true;
    for (const auto& p : table_potentials) {
      const crit::nystrom::ConvergeOptions opts;
      crit::nystrom::CriticalCouplings c;
      try {
        c = crit::nystrom::converge({}, crit::potentials::builtin(p), 2.0, opts);
      } catch (const crit::ConvergenceError& e) {
        std::printf("    %-5s %s\n", p.c_str(), e.what());
        ok = false;
        continue;
      }
      const auto& g = c.g1_sequence;
      const double d1 = std::abs(g[0] - g[1]), d2 = std::abs(g[1] - g[2]);
      std::printf("    %-5s g1(%zu) %.9f  g1(%zu) %.9f  g1(%zu) %.9f  |diffs| %.2e > %.2e\n", p.c_str(), c.n_sequence[0],
                  g[0], c.n_sequence[1], g[1], c.n_sequence[2], g[2], d1, d2);
      ok = ok && d2 < d1;
    }
    verdict(9, ok, "successive refinements shrink", sw.seconds());
  }
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
