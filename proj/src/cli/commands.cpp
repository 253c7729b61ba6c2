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

#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "critcoupling/bounds.hpp"
#include "critcoupling/error.hpp"
#include "critcoupling/kernels.hpp"
#include "critcoupling/nystrom.hpp"
#include "critcoupling/potentials.hpp"
#include "output.hpp"
#include "reference_tables.hpp"

namespace crit::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { human, csv, json };

struct GridChoice {
  quadrature::DomainMap map = quadrature::DomainMap::rational;
  std::optional<double> scale;
  std::string text = "rational";
};

struct RunConfig {
  std::string command;
  std::string potential;
  std::string interp = "cubic";
  int ell = 0;
  double beta = 0.0;
  double alpha = 2.0;
  std::string method;
  std::string kernel = "exact";
  std::string p_range = "0.5:6";
  std::string a_range = "1:2";
  std::optional<int> grid_n;
  std::string grid_map = "rational";
  std::string format = "human";
  std::string out;
  std::string table_id;
  std::size_t k = 1;
  double tol = 1e-4;
};

Json number(double v) { return std::isfinite(v) ? Json(round_to_format(v)) : Json(nullptr); }

bounds::Range parse_range(const std::string& text, const char* flag) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError(std::string(flag) + " expects lo:hi, got '" + text + "'");
  try {
    std::size_t used = 0;
    const std::string lo = text.substr(0, colon);
    const std::string hi = text.substr(colon + 1);
    const double a = std::stod(lo, &used);
    if (used != lo.size()) throw std::invalid_argument("lo");
    const double b = std::stod(hi, &used);
    if (used != hi.size()) throw std::invalid_argument("hi");
    return {a, b};
  } catch (const std::exception&) {
    throw ConfigError(std::string(flag) + " expects lo:hi, got '" + text + "'");
  }
}

GridChoice parse_grid_map(const std::string& text) {
  GridChoice g;
  g.text = text;
  if (text == "rational") return g;
  if (text == "exp") {
    g.map = quadrature::DomainMap::exponential;
    return g;
  }
  if (text.rfind("trunc:", 0) == 0) {
    g.map = quadrature::DomainMap::truncated;
    try {
      std::size_t used = 0;
      const std::string x = text.substr(6);
      g.scale = std::stod(x, &used);
      if (used != x.size() || !(*g.scale > 0.0)) throw std::invalid_argument("X");
    } catch (const std::exception&) {
      throw ConfigError("--grid-map trunc:X needs a positive X, got '" + text + "'");
    }
    return g;
  }
  throw ConfigError("--grid-map must be rational, exp or trunc:X, got '" + text + "'");
}

Format parse_format(const std::string& s) {
  if (s == "human") return Format::human;
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw ConfigError("--format must be human, csv or json");
}

Interpolation parse_interp(const std::string& s) {
  if (s == "cubic") return Interpolation::cubic_spline;
  if (s == "linear") return Interpolation::linear;
  throw ConfigError("--interp must be cubic or linear");
}

Potential load_potential(const RunConfig& cfg) {
  return potentials::make_potential(potentials::parse_potential_spec(cfg.potential, parse_interp(cfg.interp)));
}

Json config_json(const RunConfig& cfg) {
  Json c;
  c["command"] = cfg.command;
  if (cfg.command == "table") {
    c["table"] = cfg.table_id;
  } else if (cfg.command != "potentials-list") {
    c["potential"] = cfg.potential;
    c["interp"] = cfg.interp;
    c["ell"] = cfg.ell;
    c["beta"] = number(cfg.beta);
    c["alpha"] = number(cfg.alpha);
    if (cfg.command == "bound") {
      c["method"] = cfg.method;
      c["p_range"] = cfg.p_range;
      c["a_range"] = cfg.a_range;
    } else {
      c["kernel"] = cfg.kernel;
      c["k"] = cfg.k;
      c["tol"] = number(cfg.tol);
    }
    c["grid"] = {{"n", cfg.grid_n ? Json(*cfg.grid_n) : Json(nullptr)}, {"map", cfg.grid_map}};
  }
  c["format"] = cfg.format;
  return c;
}

void write_rows(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows) os << std::left << std::setw(static_cast<int>(width + 2)) << k << v << '\n';
}

std::string join_numbers(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + format_number(xs[i]);
  return s;
}

// ---- bound ----

void run_bound(const RunConfig& cfg, std::ostream& os) {
  const Format fmt = parse_format(cfg.format);
  bounds::BoundRequest req{.pot = load_potential(cfg), .ell = cfg.ell, .beta = cfg.beta, .alpha = cfg.alpha};
  req.method = bounds::parse_method(cfg.method.c_str());
  req.p_range = parse_range(cfg.p_range, "--p-range");
  req.a_range = parse_range(cfg.a_range, "--a-range");
  const GridChoice grid = parse_grid_map(cfg.grid_map);
  req.grid.map = grid.map;
  if (grid.scale) req.grid.scale = *grid.scale;
  if (cfg.grid_n) {
    const int panels = req.grid.panel_count();
    if (*cfg.grid_n % panels != 0 || *cfg.grid_n / panels < 4 || *cfg.grid_n / panels > 64) {
      throw ConfigError("--grid-n for bounds must be " + std::to_string(panels) + " x (4..64) nodes");
    }
    req.grid.n_per_panel = *cfg.grid_n / panels;
  }
  const auto r = bounds::minimize_bound(req);

  if (fmt == Format::json) {
    Json j;
    j["config"] = config_json(cfg);
    j["result"] = {{"value", number(r.value)},
                   {"p_opt", number(r.p_opt)},
                   {"a_opt", r.a_opt ? number(*r.a_opt) : Json(nullptr)},
                   {"integral_error", number(r.integral_error)}};
    j["diagnostics"] = {{"evaluations", r.evaluations},
                        {"boundary_flag", r.boundary_flag},
                        {"grid_nodes", req.grid.panel_count() * req.grid.n_per_panel}};
    os << j.dump(2) << '\n';
  } else if (fmt == Format::csv) {
    os << csv_line({"potential", "method", "ell", "beta", "alpha", "value", "p_opt", "a_opt", "integral_error",
                    "evaluations", "boundary_flag"});
    os << csv_line({cfg.potential, cfg.method, std::to_string(cfg.ell), format_number(cfg.beta),
                    format_number(cfg.alpha), format_number(r.value), format_number(r.p_opt),
                    r.a_opt ? format_number(*r.a_opt) : "", format_number(r.integral_error),
                    std::to_string(r.evaluations), r.boundary_flag ? "true" : "false"});
  } else {
    write_rows(os, {{"potential", cfg.potential},
                    {"method", cfg.method},
                    {"l", std::to_string(cfg.ell)},
                    {"beta", format_number(cfg.beta)},
                    {"alpha", format_number(cfg.alpha)},
                    {"upper limit", format_number(r.value)},
                    {"p_opt", format_number(r.p_opt)},
                    {"a_opt", r.a_opt ? format_number(*r.a_opt) : "-"},
                    {"integral error", format_number(r.integral_error)},
                    {"evaluations", std::to_string(r.evaluations)}});
    if (r.boundary_flag) os << "warning: optimum lies at the edge of the search range\n";
  }
}

// ---- exact ----

void run_exact(const RunConfig& cfg, std::ostream& os) {
  const Format fmt = parse_format(cfg.format);
  const Potential pot = load_potential(cfg);
  kernels::KernelSpec spec{cfg.ell, cfg.beta, kernels::Variant::massless_exact};
  if (cfg.beta > 0.0) {
    if (cfg.kernel == "exact") {
      spec.variant = kernels::Variant::massive_exact;
    } else if (cfg.kernel == "minorized") {
      spec.variant = kernels::Variant::massive_minorized;
    } else {
      throw ConfigError("--kernel must be exact or minorized");
    }
  } else if (cfg.kernel != "exact") {
    throw ConfigError("the massless problem has only the exact kernel");
  }
  spec.validate();
  nystrom::ConvergeOptions opts;
  opts.tol = cfg.tol;
  opts.k = cfg.k;
  const GridChoice grid = parse_grid_map(cfg.grid_map);
  opts.map = grid.map;
  if (grid.scale) opts.scale = *grid.scale;
  if (cfg.grid_n) {
    opts.n0 = *cfg.grid_n;
    opts.n_max = std::max(opts.n_max, 4 * opts.n0);
  }
  const auto c = nystrom::converge(spec, pot, cfg.alpha, opts);

  if (fmt == Format::json) {
    Json values = Json::array();
    for (double g : c.values) values.push_back(number(g));
    Json gs = Json::array();
    for (double g : c.g1_sequence) gs.push_back(number(g));
    Json j;
    j["config"] = config_json(cfg);
    j["result"] = {{"values", values},
                   {"n", c.n},
                   {"richardson_estimate", c.richardson_estimate ? number(*c.richardson_estimate) : Json(nullptr)}};
    j["diagnostics"] = {{"n_sequence", c.n_sequence}, {"g1_sequence", gs}, {"error_estimate", number(c.error_estimate)}};
    os << j.dump(2) << '\n';
  } else if (fmt == Format::csv) {
    os << csv_line({"potential", "ell", "beta", "alpha", "index", "g", "n", "richardson_estimate", "error_estimate"});
    for (std::size_t i = 0; i < c.values.size(); ++i) {
      os << csv_line({cfg.potential, std::to_string(cfg.ell), format_number(cfg.beta), format_number(cfg.alpha),
                      std::to_string(i + 1), format_number(c.values[i]), std::to_string(c.n),
                      i == 0 && c.richardson_estimate ? format_number(*c.richardson_estimate) : "",
                      i == 0 ? format_number(c.error_estimate) : ""});
    }
  } else {
    std::vector<std::pair<std::string, std::string>> rows = {{"potential", cfg.potential},
                                                             {"l", std::to_string(cfg.ell)},
                                                             {"beta", format_number(cfg.beta)},
                                                             {"alpha", format_number(cfg.alpha)}};
    for (std::size_t i = 0; i < c.values.size(); ++i) rows.push_back({"g" + std::to_string(i + 1), format_number(c.values[i])});
    std::vector<double> ns(c.n_sequence.begin(), c.n_sequence.end());
    rows.push_back({"n sequence", join_numbers(ns)});
    rows.push_back({"g1 sequence", join_numbers(c.g1_sequence)});
    rows.push_back({"richardson", c.richardson_estimate ? format_number(*c.richardson_estimate) : "-"});
    rows.push_back({"error estimate", format_number(c.error_estimate)});
    write_rows(os, rows);
  }
}

// ---- table ----

std::string row_status(const TableRow& r) {
  if (r.ref.reference_only) return "reference-only";
  if (!r.error.empty()) return "error";
  return r.pass ? "pass" : "FAIL";
}

int run_table_command(const RunConfig& cfg, std::ostream& os) {
  const Format fmt = parse_format(cfg.format);
  const TableReport rep = run_table(cfg.table_id);
  const auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };

  if (fmt == Format::json) {
    Json rows = Json::array();
    for (const auto& r : rep.rows) {
      Json row;
      row["potential"] = r.ref.potential;
      row["ell"] = r.ref.ell;
      row["beta"] = number(r.ref.beta);
      row["a"] = r.ref.a ? number(*r.ref.a) : Json(nullptr);
      row["quantity"] = r.ref.quantity;
      row["reference"] = number(r.ref.value);
      row["computed"] = r.computed ? number(*r.computed) : Json(nullptr);
      row["deviation"] = r.computed ? number(r.deviation) : Json(nullptr);
      row["tolerance"] = r.ref.tolerance ? number(*r.ref.tolerance) : Json(nullptr);
      row["status"] = row_status(r);
      row["numerical_error"] = r.computed ? number(r.numerical_error) : Json(nullptr);
      row["note"] = r.error.empty() ? r.ref.note : r.error;
      rows.push_back(row);
    }
    Json j;
    j["config"] = config_json(cfg);
    j["result"] = {{"table", rep.id}, {"rows", rows}, {"all_pass", rep.all_pass()}};
    std::size_t failed = 0;
    for (const auto& r : rep.rows) failed += r.pass ? 0 : 1;
    j["diagnostics"] = {{"rows", rep.rows.size()}, {"failed", failed}};
    os << j.dump(2) << '\n';
  } else if (fmt == Format::csv) {
    os << csv_line({"table", "potential", "ell", "beta", "a", "quantity", "reference", "computed", "deviation",
                    "tolerance", "status", "numerical_error", "note"});
    for (const auto& r : rep.rows) {
      os << csv_line({rep.id, r.ref.potential, std::to_string(r.ref.ell), format_number(r.ref.beta), opt(r.ref.a),
                      r.ref.quantity, format_number(r.ref.value), opt(r.computed),
                      r.computed ? format_number(r.deviation) : "", opt(r.ref.tolerance), row_status(r),
                      r.computed ? format_number(r.numerical_error) : "", r.error.empty() ? r.ref.note : r.error});
    }
  } else {
    os << std::left << std::setw(8) << "v(x)" << std::setw(5) << "l" << std::setw(6) << "beta" << std::setw(14)
       << "quantity" << std::setw(11) << "reference" << std::setw(13) << "computed" << std::setw(11) << "deviation"
       << std::setw(8) << "tol" << "status\n";
    for (const auto& r : rep.rows) {
      std::ostringstream dev;
      if (r.computed) dev << std::fixed << std::setprecision(3) << 100.0 * r.deviation << '%';
      std::ostringstream tol;
      if (r.ref.tolerance) tol << std::fixed << std::setprecision(1) << 100.0 * *r.ref.tolerance << '%';
      std::string q = r.ref.quantity;
      if (r.ref.a) q += " a=" + format_number(*r.ref.a);
      os << std::left << std::setw(8) << r.ref.potential << std::setw(5) << r.ref.ell << std::setw(6)
         << format_number(r.ref.beta) << std::setw(14) << q << std::setw(11) << r.ref.value_text << std::setw(13)
         << (r.computed ? format_number(*r.computed) : "-") << std::setw(11) << dev.str() << std::setw(8)
         << tol.str() << row_status(r) << '\n';
      if (!r.error.empty()) os << "  error: " << r.error << '\n';
    }
    std::vector<std::string> noted;
    for (const auto& r : rep.rows) {
      if (r.pass || r.ref.note.empty()) continue;
      if (std::find(noted.begin(), noted.end(), r.ref.note) != noted.end()) continue;
      noted.push_back(r.ref.note);
      os << "note (" << r.ref.potential << "): " << r.ref.note << '\n';
    }
    os << (rep.all_pass() ? "all rows pass\n" : "some rows fail\n");
  }
  return rep.all_pass() ? exit_ok : exit_table_failure;
}

// ---- potentials-list ----

void run_list(const RunConfig& cfg, std::ostream& os) {
  const Format fmt = parse_format(cfg.format);
  const auto& names = potentials::builtin_names();
  if (fmt == Format::json) {
    Json list = Json::array();
    for (const auto& n : names) {
      const Potential p = potentials::builtin(n);
      list.push_back({{"name", n}, {"formula", potentials::builtin_formula(n)}, {"origin_exponent", number(p.origin_exponent())}});
    }
    Json j;
    j["config"] = config_json(cfg);
    j["result"] = {{"potentials", list}};
    j["diagnostics"] = Json::object();
    os << j.dump(2) << '\n';
  } else if (fmt == Format::csv) {
    os << csv_line({"name", "formula", "origin_exponent"});
    for (const auto& n : names) {
      os << csv_line({n, potentials::builtin_formula(n), format_number(potentials::builtin(n).origin_exponent())});
    }
  } else {
    for (const auto& n : names) os << std::left << std::setw(8) << n << potentials::builtin_formula(n) << '\n';
    os << "also: expr:<expression in x>, table:<file with x v columns>\n";
  }
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::config:
      return exit_config;
    case ErrorKind::validation:
    case ErrorKind::syntax:
    case ErrorKind::io:
    case ErrorKind::format:
      return exit_potential;
    case ErrorKind::divergence:
      return exit_divergence;
    case ErrorKind::convergence:
      return exit_convergence;
    case ErrorKind::domain:
    case ErrorKind::diagonal:
      return exit_internal;
  }
  return exit_internal;
}

void add_model_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--potential", cfg.potential, "exp | sech2 | gauss | xexp | expr:<expr> | table:<file>")->required();
  sub->add_option("--interp", cfg.interp, "table interpolation: cubic or linear")->capture_default_str();
  sub->add_option("--ell", cfg.ell, "angular momentum l (0..10)")->capture_default_str();
  sub->add_option("--beta", cfg.beta, "dimensionless mass beta = mR")->capture_default_str();
  sub->add_option("--alpha", cfg.alpha, "1 (one particle) or 2 (two identical particles)")->capture_default_str();
  sub->add_option("--grid-n", cfg.grid_n, "grid size (bound: total outer nodes; exact: starting n)");
  sub->add_option("--grid-map", cfg.grid_map, "rational | exp | trunc:X")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Critical couplings of the spinless Salpeter equation: variational upper limits and Nystrom values"};
  app.name("critcoupling");
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "human";
  std::string out_path;

  auto* bound = app.add_subcommand("bound", "minimized variational upper limit on g_c");
  add_model_options(bound, cfg);
  bound->add_option("--method", cfg.method,
                    "variational-massless | simplified-massless | variational-massive (default from beta)");
  bound->add_option("--p-range", cfg.p_range, "search range lo:hi for p")->capture_default_str();
  bound->add_option("--a-range", cfg.a_range, "search range lo:hi for a (massive)")->capture_default_str();

  auto* exact = app.add_subcommand("exact", "critical couplings from the Nystrom-discretized kernel");
  add_model_options(exact, cfg);
  exact->add_option("--k", cfg.k, "number of characteristic numbers")->capture_default_str();
  exact->add_option("--tol", cfg.tol, "relative convergence tolerance (>= 1e-6)")->capture_default_str();
  exact->add_option("--kernel", cfg.kernel, "massive kernel: exact or minorized")->capture_default_str();

  auto* table = app.add_subcommand("table", "recompute a reference table (1, 2 or 3)");
  table->add_option("id", cfg.table_id, "table id")->required();

  auto* list = app.add_subcommand("potentials-list", "list the built-in potentials");

  for (auto* sub : {bound, exact, table, list}) {
    sub->add_option("--format", format, "human | csv | json")->capture_default_str();
    sub->add_option("--out", out_path, "write output to FILE");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help(app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name());
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return exit_config;
  }
  cfg.format = format;
  cfg.out = out_path;
  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.command == "bound" && cfg.method.empty()) {
    cfg.method = cfg.beta > 0.0 ? "variational-massive" : "variational-massless";
  }

  std::ostringstream buffer;
  int status = exit_ok;
  try {
    parse_format(cfg.format);
    if (cfg.command == "bound") {
      run_bound(cfg, buffer);
    } else if (cfg.command == "exact") {
      run_exact(cfg, buffer);
    } else if (cfg.command == "table") {
      status = run_table_command(cfg, buffer);
    } else {
      run_list(cfg, buffer);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_internal;
  }
  if (cfg.out.empty()) {
    out << buffer.str();
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f || !(f << buffer.str()) || !f.flush()) {
      err << "error: cannot write '" << cfg.out << "'\n";
      return exit_potential;
    }
  }
  return status;
}

}  // namespace crit::cli
