// Copyright 2026 The ladder-nonlocality Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ladder/cli.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

namespace ladder::cli {
namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

ParseOutcome parse(std::vector<std::string> args) {
  args.insert(args.begin(), "ladder_cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_args(static_cast<int>(argv.size()), argv.data());
}

RunResult run_args(std::vector<std::string> args) {
  const auto parsed = parse(std::move(args));
  if (!parsed.config) return {parsed.exit_code, "", parsed.message};
  return run(*parsed.config);
}

struct Process {
  int status;
  std::string out;
};

Process spawn(const std::string& args) {
  const std::string cmd = std::string(LADDER_CLI_PATH) + " " + args + " 2>/dev/null";
  Process p{0, ""};
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) p.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  p.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return p;
}

TEST(FormatTest, TwelveSignificantDigits) {
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(2.0 / 3.0), "0.666666666667");
  EXPECT_EQ(format_number(-8.0), "-8");
  EXPECT_EQ(format_number(1.5e-20), "1.5e-20");
}

TEST(ParseTest, RecognizesCommandsAndFlags) {
  const auto p = parse({"pk", "--k", "3", "--x", "0.5", "--alpha-k", "0.2", "--format", "json", "--tol", "1e-10"});
  ASSERT_TRUE(p.config);
  EXPECT_EQ(p.config->command, Command::pk);
  EXPECT_EQ(p.config->k, 3);
  EXPECT_EQ(p.config->x, 0.5);
  ASSERT_TRUE(p.config->alpha_k);
  EXPECT_EQ(*p.config->alpha_k, 0.2);
  EXPECT_EQ(p.config->format, Format::json);
  EXPECT_EQ(p.config->tol, 1e-10);

  const auto global_first = parse({"--format", "json", "table1", "--kmax", "4"});
  ASSERT_TRUE(global_first.config);
  EXPECT_EQ(global_first.config->kmax, 4);
  EXPECT_EQ(global_first.config->format, Format::json);
}

TEST(ParseTest, UsageErrors) {
  EXPECT_EQ(parse({}).exit_code, kExitUsage);
  EXPECT_EQ(parse({"frobnicate"}).exit_code, kExitUsage);
  EXPECT_EQ(parse({"bell", "--k", "1"}).exit_code, kExitUsage);
  EXPECT_EQ(parse({"lhv", "--k", "1", "--x", "0.5"}).exit_code, kExitUsage);
  EXPECT_EQ(parse({"table1", "--format", "xml"}).exit_code, kExitUsage);
  EXPECT_EQ(parse({"table1", "--tol", "0.01"}).exit_code, kExitUsage);
  EXPECT_EQ(parse({"table1", "--tol", "0"}).exit_code, kExitUsage);
  EXPECT_EQ(parse({"solve", "--k", "1", "--x", "0.5"}).exit_code, kExitUsage);
  EXPECT_FALSE(parse({"table1", "--tol", "1e-3"}).exit_code);
}

TEST(RunTest, Table1Csv) {
  const auto r = run_args({"table1", "--kmax", "10", "--format", "csv"});
  ASSERT_EQ(r.exit_code, 0) << r.diagnostic;
  const auto lines = split(r.output, '\n');
  ASSERT_EQ(lines.size(), 11u);
  EXPECT_EQ(lines[0], "K,r1,r2,p_max");
  const double published[10][3] = {{0.464, 2.153, 0.090}, {0.569, 1.754, 0.174}, {0.636, 1.571, 0.231},
                                    {0.683, 1.463, 0.270}, {0.718, 1.392, 0.299}, {0.745, 1.341, 0.322},
                                    {0.767, 1.303, 0.339}, {0.785, 1.273, 0.354}, {0.800, 1.248, 0.365},
                                    {0.813, 1.229, 0.375}};
  for (int i = 0; i < 10; ++i) {
    const auto cells = split(lines[static_cast<std::size_t>(i + 1)], ',');
    ASSERT_EQ(cells.size(), 4u);
    EXPECT_EQ(std::stoi(cells[0]), i + 1);
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(std::stod(cells[static_cast<std::size_t>(c + 1)]), published[i][c], 0.001);
  }
}

TEST(RunTest, BellJsonForMaximallyEntangledState) {
  const auto r = run_args({"bell", "--k", "1", "--x", "1", "--format", "json"});
  ASSERT_EQ(r.exit_code, 0) << r.diagnostic;
  const auto doc = nlohmann::json::parse(r.output);
  EXPECT_EQ(doc["command"], "bell");
  EXPECT_EQ(doc["params"]["k"], 1);
  const auto& row = doc["results"]["bell"].at(0);
  EXPECT_LE(std::abs(row["s_value"].get<double>()), 1e-12);
  EXPECT_EQ(row["s_matches_two_pk"], 1);
}

TEST(RunTest, ScanFirstRowAndBracket) {
  const auto r = run_args({"scan", "--k", "1", "--lo", "0", "--hi", "0.85", "--steps", "86"});
  ASSERT_EQ(r.exit_code, 0) << r.diagnostic;
  const auto lines = split(r.output, '\n');
  ASSERT_EQ(lines.size(), 87u);
  EXPECT_EQ(lines[0], "x,m_value");
  EXPECT_EQ(lines[1], "0,1");
  int crossings = 0;
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
    const auto a = split(lines[i], ',');
    const auto b = split(lines[i + 1], ',');
    if ((std::stod(a[1]) > 0) != (std::stod(b[1]) > 0)) {
      ++crossings;
      EXPECT_LE(std::stod(a[0]), 0.464);
      EXPECT_GE(std::stod(b[0]), 0.464);
    }
  }
  EXPECT_EQ(crossings, 1);
}

TEST(RunTest, SolveEmitsChainAndCertificate) {
  const auto r = run_args({"solve", "--k", "3", "--x", "0.6", "--alpha-k", "0.4"});
  ASSERT_EQ(r.exit_code, 0) << r.diagnostic;
  const auto blocks = split(r.output, '\n');
  EXPECT_EQ(blocks[0], "k,alpha_k,beta_k");
  EXPECT_EQ(blocks.size(), 1u + 4u + 1u + 2u);
  EXPECT_EQ(blocks[6], "K,x,p_k,max_zero_violation,chain_residual,ladder_holds");
  EXPECT_EQ(split(blocks[7], ',').back(), "1");
}

TEST(RunTest, PkCrossCheckAgrees) {
  const auto r = run_args({"pk", "--k", "2", "--x", "0.5", "--alpha-k", "0.3", "--format", "json"});
  ASSERT_EQ(r.exit_code, 0) << r.diagnostic;
  const auto row = nlohmann::json::parse(r.output)["results"]["pk"].at(0);
  EXPECT_LE(row["oracle_residual"].get<double>(), 1e-12);
  EXPECT_EQ(row["oracle_agrees"], 1);
  EXPECT_NEAR(row["alpha_k"].get<double>(), 0.3, 1e-15);
}

TEST(RunTest, DegreesConvertInputAndOutput) {
  const auto rad = run_args({"pk", "--k", "1", "--x", "0.5", "--alpha-k", "0.5", "--format", "json"});
  const auto deg = run_args({"pk", "--k", "1", "--x", "0.5", "--alpha-k", "28.6478897565", "--degrees", "--format", "json"});
  ASSERT_EQ(rad.exit_code, 0);
  ASSERT_EQ(deg.exit_code, 0);
  const auto a = nlohmann::json::parse(rad.output)["results"]["pk"].at(0);
  const auto b = nlohmann::json::parse(deg.output)["results"]["pk"].at(0);
  EXPECT_NEAR(a["p_general"].get<double>(), b["p_general"].get<double>(), 1e-10);
  EXPECT_NEAR(b["optimal_alpha_k"].get<double>(), a["optimal_alpha_k"].get<double>() * 180 / std::numbers::pi, 1e-8);
}

TEST(RunTest, LhvAndContradiction) {
  const auto lhv = run_args({"lhv", "--k", "3"});
  ASSERT_EQ(lhv.exit_code, 0);
  EXPECT_EQ(lhv.output,
            "K,max_s,argmax_index,assignments_checked\n3,0,0,256\n\n"
            "K,max_s,argmax_index,assignments_checked\n3,0,0,256\n");
  const auto c = run_args({"contradiction", "--k", "2"});
  ASSERT_EQ(c.exit_code, 0);
  EXPECT_EQ(c.output, "K,lhs_product,rhs_product,satisfying_assignments,assignments_checked\n2,1,-1,0,64\n");
  const auto big = run_args({"contradiction", "--k", "40"});
  ASSERT_EQ(big.exit_code, 0);
  EXPECT_EQ(big.output, "K,lhs_product,rhs_product\n40,1,-1\n");
}

TEST(RunTest, ErrorCodes) {
  EXPECT_EQ(run_args({"bell", "--k", "1", "--x", "0"}).exit_code, kExitDomain);
  EXPECT_EQ(run_args({"bell", "--k", "1", "--x", "-2"}).exit_code, kExitDomain);
  EXPECT_EQ(run_args({"solve", "--k", "1", "--x", "0.5", "--alpha-k", "0"}).exit_code, kExitDomain);
  EXPECT_EQ(run_args({"scan", "--k", "1", "--lo", "1", "--hi", "0", "--steps", "5"}).exit_code, kExitDomain);
  EXPECT_EQ(run_args({"lhv", "--k", "13"}).exit_code, kExitNumeric);
  EXPECT_EQ(run_args({"table1", "--kmax", "65"}).exit_code, kExitNumeric);
  EXPECT_EQ(run_args({"scan", "--k", "64", "--lo", "0", "--hi", "1e10", "--steps", "3"}).exit_code, kExitNumeric);
  const auto r = run_args({"bell", "--k", "0", "--x", "0.5"});
  EXPECT_EQ(r.exit_code, kExitNumeric);
  EXPECT_TRUE(r.output.empty());
  EXPECT_FALSE(r.diagnostic.empty());
}

// Every number in the JSON rendering equals the CSV cell parsed as double, and
// re-formats to the identical string.
TEST(RunTest, CsvAndJsonCarryIdenticalNumbers) {
  const std::vector<std::vector<std::string>> invocations = {
      {"table1", "--kmax", "10"},
      {"bell", "--k", "4", "--x", "0.7"},
      {"pk", "--k", "2", "--x", "0.45", "--alpha-k", "-0.9"},
      {"scan", "--k", "3", "--lo", "-1.2", "--hi", "1.2", "--steps", "25"},
      {"lhv", "--k", "2"},
  };
  for (auto args : invocations) {
    auto csv_args = args;
    csv_args.insert(csv_args.end(), {"--format", "csv"});
    auto json_args = args;
    json_args.insert(json_args.end(), {"--format", "json"});
    const auto csv = run_args(csv_args);
    const auto json = run_args(json_args);
    ASSERT_EQ(csv.exit_code, 0);
    ASSERT_EQ(json.exit_code, 0);
    const auto doc = nlohmann::ordered_json::parse(json.output);
    const auto& results = doc["results"];
    const auto sections = split(csv.output, '\n');
    std::size_t line = 0;
    for (const auto& [name, rows] : results.items()) {
      const auto header = split(sections[line++], ',');
      for (const auto& row : rows) {
        const auto cells = split(sections[line++], ',');
        ASSERT_EQ(cells.size(), header.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
          const double from_json = row[header[c]].get<double>();
          EXPECT_EQ(from_json, std::stod(cells[c])) << name << " " << header[c];
          EXPECT_EQ(format_number(from_json), cells[c]);
        }
      }
      if (line < sections.size() && sections[line].empty()) ++line;
    }
    EXPECT_EQ(line, sections.size());
  }
}

TEST(BinaryTest, DeterministicOutputAndExitCodes) {
  const auto a = spawn("table1 --kmax 10 --format json");
  const auto b = spawn("table1 --kmax 10 --format json");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());

  const auto usage = spawn("table1 --bogus");
  EXPECT_EQ(usage.status, kExitUsage);
  EXPECT_TRUE(usage.out.empty());

  const auto domain = spawn("bell --k 2 --x 0");
  EXPECT_EQ(domain.status, kExitDomain);
  EXPECT_TRUE(domain.out.empty());

  const auto range = spawn("lhv --k 20");
  EXPECT_EQ(range.status, kExitNumeric);
  EXPECT_TRUE(range.out.empty());
}

TEST(BinaryTest, OutputFileOnlyOnSuccess) {
  const auto dir = std::filesystem::temp_directory_path() / "ladder_cli_test";
  std::filesystem::create_directories(dir);
  const auto good = dir / "table.csv";
  const auto bad = dir / "bad.csv";
  std::filesystem::remove(good);
  std::filesystem::remove(bad);

  EXPECT_EQ(spawn("table1 --kmax 3 --output " + good.string()).status, 0);
  std::ifstream in(good);
  std::stringstream content;
  content << in.rdbuf();
  EXPECT_EQ(content.str(), spawn("table1 --kmax 3").out);

  EXPECT_EQ(spawn("bell --k 1 --x 0 --output " + bad.string()).status, kExitDomain);
  EXPECT_FALSE(std::filesystem::exists(bad));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace ladder::cli
