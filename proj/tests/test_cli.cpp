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

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "critcoupling/error.hpp"
#include "output.hpp"
#include "reference_tables.hpp"

namespace cli = crit::cli;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Output, NumberFormatting) {
  EXPECT_EQ(cli::format_number(4.0), "4");
  EXPECT_EQ(cli::format_number(1.0 / 3.0), "0.333333333");
  EXPECT_EQ(cli::round_to_format(1.0 / 3.0), 0.333333333);
  EXPECT_EQ(cli::format_number(1.25e-12), "1.25e-12");
}

TEST(Output, CsvQuotingRoundTrip) {
  const std::vector<std::string> fields{"plain", "with,comma", "with \"quote\"", "multi\nline", ""};
  const std::string line = cli::csv_line(fields);
  EXPECT_EQ(line.substr(line.size() - 2), "\r\n");
  const auto rows = cli::parse_csv(line);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0], fields);
  EXPECT_EQ(cli::csv_field("a\"b"), "\"a\"\"b\"");
}

TEST(Output, CsvCommentsAndErrors) {
  const auto rows = cli::parse_csv("# header\na,b\n1,2\n", true);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][1], "2");
  EXPECT_THROW(cli::parse_csv("\"unterminated\n"), crit::FormatError);
}

TEST(ReferenceData, EmbeddedTableParses) {
  const auto& rows = cli::reference_rows();
  EXPECT_GT(rows.size(), 40u);
  EXPECT_EQ(cli::reference_rows_for("1").size(), 20u);
  for (const auto& r : rows) {
    EXPECT_GT(r.value, 0.0);
    if (!r.reference_only) EXPECT_TRUE(r.tolerance.has_value()) << r.potential << " " << r.quantity;
  }
}

TEST(ReferenceData, RejectsBadId) {
  EXPECT_THROW(cli::run_table("7"), crit::ConfigError);
}

TEST(Commands, BoundJson) {
  const auto r = call({"bound", "--potential", "exp", "--format", "json"});
  ASSERT_EQ(r.code, cli::exit_ok) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["config"]["command"], "bound");
  EXPECT_EQ(j["config"]["method"], "variational-massless");
  const double v = j["result"]["value"];
  EXPECT_GT(v, 5.0);
  EXPECT_LT(v, 6.0);
  EXPECT_TRUE(j["result"]["a_opt"].is_null());
  EXPECT_FALSE(j["diagnostics"]["boundary_flag"]);
}

TEST(Commands, JsonIsDeterministic) {
  const std::vector<std::string> args{"bound", "--potential", "gauss", "--ell", "1", "--format", "json"};
  EXPECT_EQ(call(args).out, call(args).out);
}

TEST(Commands, BoundCsvMatchesJson) {
  const auto j = json::parse(call({"bound", "--potential", "sech2", "--format", "json"}).out);
  const auto c = call({"bound", "--potential", "sech2", "--format", "csv"});
  const auto rows = cli::parse_csv(c.out);
  ASSERT_EQ(rows.size(), 2u);
  ASSERT_EQ(rows[0][5], "value");
  EXPECT_EQ(std::stod(rows[1][5]), j["result"]["value"].get<double>());
}

TEST(Commands, MassiveDefaultsToMassiveMethod) {
  const auto r = call({"bound", "--potential", "exp", "--beta", "1", "--a-range", "1.5:1.5", "--format", "json"});
  ASSERT_EQ(r.code, cli::exit_ok) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["config"]["method"], "variational-massive");
  EXPECT_EQ(j["result"]["a_opt"].get<double>(), 1.5);
}

TEST(Commands, ExactHumanAndJson) {
  const auto h = call({"exact", "--potential", "exp"});
  ASSERT_EQ(h.code, cli::exit_ok) << h.err;
  EXPECT_NE(h.out.find("g1"), std::string::npos);
  const auto j = json::parse(call({"exact", "--potential", "exp", "--k", "2", "--format", "json"}).out);
  ASSERT_EQ(j["result"]["values"].size(), 2u);
  EXPECT_LT(j["result"]["values"][0].get<double>(), j["result"]["values"][1].get<double>());
  EXPECT_GE(j["diagnostics"]["n_sequence"].size(), 3u);
}

TEST(Commands, ExpressionPotential) {
  const auto a = json::parse(call({"bound", "--potential", "expr:exp(-x)", "--format", "json"}).out);
  const auto b = json::parse(call({"bound", "--potential", "exp", "--format", "json"}).out);
  EXPECT_NEAR(a["result"]["value"].get<double>(), b["result"]["value"].get<double>(), 1e-8);
}

TEST(Commands, WritesOutputFile) {
  const auto path = std::filesystem::path(::testing::TempDir()) / "list.json";
  const auto r = call({"potentials-list", "--format", "json", "--out", path.string()});
  ASSERT_EQ(r.code, cli::exit_ok);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const auto j = json::parse(in);
  EXPECT_EQ(j["result"]["potentials"].size(), 4u);
}

TEST(ExitCodes, Config) {
  EXPECT_EQ(call({}).code, cli::exit_config);
  EXPECT_EQ(call({"bound"}).code, cli::exit_config);
  EXPECT_EQ(call({"bound", "--potential", "exp", "--ell", "11"}).code, cli::exit_config);
  EXPECT_EQ(call({"bound", "--potential", "exp", "--format", "xml"}).code, cli::exit_config);
  EXPECT_EQ(call({"bound", "--potential", "exp", "--p-range", "3"}).code, cli::exit_config);
  EXPECT_EQ(call({"bound", "--potential", "exp", "--grid-n", "100"}).code, cli::exit_config);
  EXPECT_EQ(call({"exact", "--potential", "exp", "--tol", "1e-9"}).code, cli::exit_config);
  EXPECT_EQ(call({"exact", "--potential", "exp", "--kernel", "minorized"}).code, cli::exit_config);
  EXPECT_EQ(call({"table", "9"}).code, cli::exit_config);
  EXPECT_EQ(call({"bound", "--potential", "nothing"}).code, cli::exit_config);
}

TEST(ExitCodes, Potential) {
  const auto r = call({"bound", "--potential", "expr:exp(-x"});
  EXPECT_EQ(r.code, cli::exit_potential);
  EXPECT_NE(r.err.find("byte"), std::string::npos);
  EXPECT_EQ(call({"bound", "--potential", "expr:1/(1+x)"}).code, cli::exit_potential);
  EXPECT_EQ(call({"bound", "--potential", "table:/nonexistent/file"}).code, cli::exit_potential);
  EXPECT_EQ(call({"exact", "--potential", "expr:0*x"}).code, cli::exit_potential);
}

TEST(ExitCodes, Divergence) {
  const auto r = call({"bound", "--potential", "expr:1/(1+x)^2", "--beta", "1", "--a-range", "1:2"});
  EXPECT_EQ(r.code, cli::exit_divergence);
}

TEST(ExitCodes, Help) {
  const auto r = call({"bound", "--help"});
  EXPECT_EQ(r.code, cli::exit_ok);
  EXPECT_NE(r.out.find("--potential"), std::string::npos);
}

TEST(Commands, TableOnePasses) {
  const auto r = call({"table", "1", "--format", "json"});
  EXPECT_EQ(r.code, cli::exit_ok) << r.out;
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j["result"]["all_pass"].get<bool>());
  EXPECT_EQ(j["diagnostics"]["failed"], 0);
}
