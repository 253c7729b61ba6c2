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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "critcoupling/parallel.hpp"

namespace crit::cli {

struct ReferenceRow {
  std::string table;  // "1", "2", "3" or "text"
  std::string potential;
  int ell = 0;
  double beta = 0.0;
  std::optional<double> a;
  std::string quantity;  // gc, gup1, gup2, gup, lower_a, lower_b
  std::string value_text;
  double value = 0.0;
  std::optional<double> tolerance;
  bool reference_only = false;
  std::string note;
};

/// The reference-value CSV compiled into the binary.
std::string_view embedded_reference_csv();
std::vector<ReferenceRow> parse_reference_csv(std::string_view text);
const std::vector<ReferenceRow>& reference_rows();
std::vector<ReferenceRow> reference_rows_for(std::string_view table);

struct TableRow {
  ReferenceRow ref;
  std::optional<double> computed;
  double deviation = 0.0;  // (computed - reference) / reference
  double numerical_error = 0.0;
  bool pass = true;
  std::string error;  // non-empty if the cell could not be computed
};

struct TableReport {
  std::string id;
  std::vector<TableRow> rows;
  bool all_pass() const;
};

/// Computes one cell (gc via the Nystrom ladder, gup* via minimize_bound).
TableRow compute_cell(const ReferenceRow& ref);
/// Recomputes every computable row of a table; cells run concurrently.
TableReport run_table(std::string_view id, parallel::Execution exec = parallel::Execution::parallel);

}  // namespace crit::cli
