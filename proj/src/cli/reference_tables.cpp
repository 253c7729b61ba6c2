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

#include "reference_tables.hpp"

#include <cmath>
#include <cstdlib>
#include <exception>

#include "critcoupling/bounds.hpp"
#include "critcoupling/error.hpp"
#include "critcoupling/kernels.hpp"
#include "critcoupling/nystrom.hpp"
#include "critcoupling/potentials.hpp"
#include "output.hpp"

namespace crit::cli {

namespace {

double to_double(const std::string& s, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw FormatError("not a number: '" + s + "'", line);
  return v;
}

}  // namespace

std::vector<ReferenceRow> parse_reference_csv(std::string_view text) {
  const auto records = parse_csv(text, true);
  if (records.empty()) throw FormatError("reference data is empty", 1);
  const std::vector<std::string> header = {"table", "potential", "ell", "beta", "a",
                                           "quantity", "value", "tolerance", "scope", "note"};
  if (records.front() != header) throw FormatError("unexpected reference header", 1);
  std::vector<ReferenceRow> rows;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& f = records[r];
    if (f.size() != header.size()) throw FormatError("expected 10 fields", r + 1);
    ReferenceRow row;
    row.table = f[0];
    row.potential = f[1];
    row.ell = static_cast<int>(to_double(f[2], r + 1));
    row.beta = to_double(f[3], r + 1);
    if (!f[4].empty()) row.a = to_double(f[4], r + 1);
    row.quantity = f[5];
    row.value_text = f[6];
    row.value = to_double(f[6], r + 1);
    if (!f[7].empty()) row.tolerance = to_double(f[7], r + 1);
    row.reference_only = f[8] == "reference-only";
    row.note = f[9];
    rows.push_back(std::move(row));
  }
  return rows;
}

const std::vector<ReferenceRow>& reference_rows() {
  static const std::vector<ReferenceRow> rows = parse_reference_csv(embedded_reference_csv());
  return rows;
}

std::vector<ReferenceRow> reference_rows_for(std::string_view table) {
  std::vector<ReferenceRow> out;
  for (const auto& r : reference_rows()) {
    if (r.table == table) out.push_back(r);
  }
  return out;
}

bool TableReport::all_pass() const {
  for (const auto& r : rows) {
    if (!r.pass) return false;
  }
  return true;
}

TableRow compute_cell(const ReferenceRow& ref) {
  TableRow row;
  row.ref = ref;
  if (ref.reference_only) return row;
  const Potential pot = potentials::builtin(ref.potential);
  try {
    if (ref.quantity == "gc") {
      kernels::KernelSpec spec{ref.ell, ref.beta,
                               ref.beta > 0.0 ? kernels::Variant::massive_exact : kernels::Variant::massless_exact};
      const auto c = nystrom::converge(spec, pot, 2.0, 1e-4);
      row.computed = c.values.front();
      row.numerical_error = c.error_estimate;
    } else {
      bounds::BoundRequest req{.pot = pot, .ell = ref.ell, .beta = ref.beta, .alpha = 2.0};
      if (ref.quantity == "gup2") {
        req.method = bounds::BoundMethod::simplified_massless;
      } else if (ref.beta > 0.0) {
        req.method = bounds::BoundMethod::variational_massive;
        const double a = ref.a.value_or(2.0);
        req.a_range = {a, a};
      }
      const auto b = bounds::minimize_bound(req);
      row.computed = b.value;
      row.numerical_error = b.integral_error;
    }
    row.deviation = (*row.computed - ref.value) / ref.value;
    row.pass = std::abs(row.deviation) <= ref.tolerance.value_or(0.0);
  } catch (const Error& e) {
    row.pass = false;
    row.error = e.what();
  }
  return row;
}

TableReport run_table(std::string_view id, parallel::Execution exec) {
  if (id != "1" && id != "2" && id != "3") throw ConfigError("table id must be 1, 2 or 3");
  TableReport report;
  report.id = std::string(id);
  const auto refs = reference_rows_for(id);
  report.rows.resize(refs.size());
  parallel::for_each_index(refs.size(), exec, [&](std::size_t i) { report.rows[i] = compute_cell(refs[i]); });
  return report;
}

}  // namespace crit::cli
