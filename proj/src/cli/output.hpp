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

#include <string>
#include <string_view>
#include <vector>

namespace crit::cli {

/// Nine significant digits, printf %.9g style.
std::string format_number(double v);
/// The double that format_number(v) denotes.
double round_to_format(double v);

/// RFC 4180 field quoting: fields containing a comma, quote, CR or LF are
/// wrapped in quotes with embedded quotes doubled.
std::string csv_field(std::string_view s);
std::string csv_line(const std::vector<std::string>& fields);

/// Parses RFC 4180 text into records. Lines starting with '#' outside a
/// quoted field are skipped when skip_comments is set. Throws FormatError.
std::vector<std::vector<std::string>> parse_csv(std::string_view text, bool skip_comments = false);

}  // namespace crit::cli
