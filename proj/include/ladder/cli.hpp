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

#pragma once

// Command-line front end: flag parsing, dispatch and CSV/JSON rendering.
//
// Every number is printed with at most 12 significant digits in the shortest
// form that std::to_chars produces ('.' separator, no locale). JSON values are
// those same strings parsed back to double, so both encodings carry identical
// numbers.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ladder/bell.hpp"
#include "ladder/errors.hpp"
#include "ladder/ladder.hpp"
#include "ladder/lhv.hpp"
#include "ladder/optimizer.hpp"
#include "ladder/quantum_core.hpp"

namespace ladder::cli {

enum class Command { table1, pk, solve, bell, lhv, scan, contradiction };
enum class Format { csv, json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitNumeric = 4;
inline constexpr int kExitIo = 1;

inline constexpr double kMaxTolerance = 1e-3;

struct RunConfig {
  Command command = Command::table1;
  int k = 1;
  int kmax = 10;
  double x = 1.0;
  std::optional<double> alpha_k;
  double lo = 0.0;
  double hi = 0.85;
  int steps = 86;
  double tol = kDefaultZeroTolerance;
  Format format = Format::csv;
  std::optional<std::string> output;
  bool degrees = false;
};

inline std::string command_name(Command c) {
  switch (c) {
    case Command::table1: return "table1";
    case Command::pk: return "pk";
    case Command::solve: return "solve";
    case Command::bell: return "bell";
    case Command::lhv: return "lhv";
    case Command::scan: return "scan";
    case Command::contradiction: return "contradiction";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Report model

using Cell = std::variant<std::int64_t, double>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, Cell>> params;
  std::vector<Table> tables;
};

inline std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

inline std::string format_cell(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return format_number(std::get<double>(c));
}

inline std::string render_csv(const Report& report) {
  std::string out;
  for (std::size_t t = 0; t < report.tables.size(); ++t) {
    const auto& table = report.tables[t];
    if (t > 0) out += '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c > 0) out += ',';
      out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c > 0) out += ',';
        out += format_cell(row[c]);
      }
      out += '\n';
    }
  }
  return out;
}

inline nlohmann::ordered_json cell_json(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  const std::string text = format_number(std::get<double>(c));
  double parsed = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), parsed);
  return parsed;
}

inline std::string render_json(const Report& report) {
  nlohmann::ordered_json doc;
  doc["command"] = report.command;
  auto& params = doc["params"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.params) params[key] = cell_json(value);
  auto& results = doc["results"] = nlohmann::ordered_json::object();
  for (const auto& table : report.tables) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = cell_json(row[c]);
      rows.push_back(std::move(obj));
    }
    results[table.name] = std::move(rows);
  }
  return doc.dump(2) + "\n";
}

inline std::string render(const Report& report, Format format) {
  return format == Format::csv ? render_csv(report) : render_json(report);
}

// ---------------------------------------------------------------------------
// Commands

namespace detail {

inline Cell flag(bool b) { return std::int64_t{b ? 1 : 0}; }
inline Cell integer(std::int64_t v) { return v; }

inline double angle_out(const RunConfig& cfg, double radians) {
  return cfg.degrees ? radians * 180.0 / std::numbers::pi : radians;
}

inline Setting angle_in(const RunConfig& cfg, double value) {
  return Setting::radians(cfg.degrees ? value * std::numbers::pi / 180.0 : value);
}

inline Report table1_report(const RunConfig& cfg) {
  Report r{"table1", {{"kmax", integer(cfg.kmax)}}, {}};
  Table t{"table1", {"K", "r1", "r2", "p_max"}, {}};
  for (const auto& row : table1(cfg.kmax)) t.rows.push_back({integer(row.k), row.r1, row.r2, row.p_max});
  r.tables.push_back(std::move(t));
  return r;
}

inline Report pk_report(const RunConfig& cfg) {
  const auto state = LadderState::from_ratio(cfg.x);
  const Setting optimum = optimal_alpha_k(state, cfg.k);
  const Setting alpha = cfg.alpha_k ? angle_in(cfg, *cfg.alpha_k) : optimum;
  const double hardy = pk_hardy(state, cfg.k);
  const double general = pk_general(state, cfg.k, alpha);
  const auto cert = verify_ladder(state, solve_chain(state, cfg.k, alpha));
  const double residual = std::abs(general - cert.p_k);

  Report r{"pk", {{"k", integer(cfg.k)}, {"x", cfg.x}, {"tol", cfg.tol}}, {}};
  if (cfg.alpha_k) r.params.emplace_back("alpha_k", *cfg.alpha_k);
  Table t{"pk",
          {"K", "x", "p_hardy", "optimal_alpha_k", "alpha_k", "p_general", "p_oracle",
           "oracle_residual", "max_zero_violation", "oracle_agrees"},
          {}};
  t.rows.push_back({integer(cfg.k), cfg.x, hardy, angle_out(cfg, optimum.angle()),
                    angle_out(cfg, alpha.angle()), general, cert.p_k, residual,
                    cert.max_zero_violation, flag(residual <= cfg.tol)});
  r.tables.push_back(std::move(t));
  return r;
}

inline Report solve_report(const RunConfig& cfg) {
  if (!cfg.alpha_k) throw DomainError("solve requires --alpha-k");
  const auto state = LadderState::from_ratio(cfg.x);
  const Setting alpha = angle_in(cfg, *cfg.alpha_k);
  const auto chain = solve_chain(state, cfg.k, alpha);
  const auto cert = verify_ladder(state, chain);

  Report r{"solve",
           {{"k", integer(cfg.k)}, {"x", cfg.x}, {"alpha_k", *cfg.alpha_k}, {"tol", cfg.tol}},
           {}};
  Table settings{"chain", {"k", "alpha_k", "beta_k"}, {}};
  for (std::size_t i = 0; i < chain.alpha_angles.size(); ++i) {
    settings.rows.push_back({integer(static_cast<std::int64_t>(i)),
                             angle_out(cfg, chain.alpha_angles[i].angle()),
                             angle_out(cfg, chain.beta_angles[i].angle())});
  }
  Table certificate{"certificate",
                    {"K", "x", "p_k", "max_zero_violation", "chain_residual", "ladder_holds"},
                    {}};
  certificate.rows.push_back({integer(cfg.k), cfg.x, cert.p_k, cert.max_zero_violation,
                              chain_residual(state, chain),
                              flag(cert.max_zero_violation <= cfg.tol && cert.p_k > cfg.tol)});
  r.tables.push_back(std::move(settings));
  r.tables.push_back(std::move(certificate));
  return r;
}

inline Report bell_report(const RunConfig& cfg) {
  const auto state = LadderState::from_ratio(cfg.x);
  const auto b = s_k(state, cfg.k);
  const double two_pk = 2.0 * pk_hardy(state, cfg.k);
  Report r{"bell", {{"k", integer(cfg.k)}, {"x", cfg.x}, {"tol", cfg.tol}}, {}};
  Table t{"bell",
          {"K", "x", "p_plus_00", "p_plus_KK", "cross_sum", "s_value", "two_pk", "boschi_lhs",
           "boschi_rhs", "chsh_k1_sum", "s_matches_two_pk", "boschi_rhs_vanishes"},
          {}};
  t.rows.push_back({integer(cfg.k), cfg.x, b.p_plus_00, b.p_plus_KK, b.cross_sum, b.s_value, two_pk,
                    b.boschi_lhs, b.boschi_rhs, chsh_k1_sum(state),
                    flag(std::abs(b.s_value - two_pk) <= cfg.tol), flag(b.boschi_rhs <= cfg.tol)});
  r.tables.push_back(std::move(t));
  return r;
}

inline Table bound_table(const std::string& name, const LhvBound& bound, int k) {
  Table t{name, {"K", "max_s", "argmax_index", "assignments_checked"}, {}};
  t.rows.push_back({integer(k), bound.max_s, integer(static_cast<std::int64_t>(bound.argmax.index())),
                    integer(static_cast<std::int64_t>(bound.assignments_checked))});
  return t;
}

inline Report lhv_report(const RunConfig& cfg) {
  Report r{"lhv", {{"k", integer(cfg.k)}}, {}};
  r.tables.push_back(bound_table("correlation_bound", enumerate_bound(cfg.k), cfg.k));
  r.tables.push_back(bound_table("outcome_bound", enumerate_boschi_bound(cfg.k), cfg.k));
  return r;
}

inline Report scan_report(const RunConfig& cfg) {
  Report r{"scan",
           {{"k", integer(cfg.k)}, {"lo", cfg.lo}, {"hi", cfg.hi}, {"steps", integer(cfg.steps)}},
           {}};
  Table t{"scan", {"x", "m_value"}, {}};
  for (const auto& s : scan_m(cfg.k, cfg.lo, cfg.hi, cfg.steps)) t.rows.push_back({s.x, s.m_value});
  r.tables.push_back(std::move(t));
  return r;
}

inline Report contradiction_report(const RunConfig& cfg) {
  const auto rec = direct_contradiction(cfg.k);
  Report r{"contradiction", {{"k", integer(cfg.k)}}, {}};
  Table t{"contradiction", {"K", "lhs_product", "rhs_product"}, {}};
  t.rows.push_back({integer(rec.k_max), integer(rec.lhs_product), integer(rec.rhs_product)});
  if (rec.satisfying) {
    t.columns.emplace_back("satisfying_assignments");
    t.columns.emplace_back("assignments_checked");
    t.rows.back().push_back(integer(static_cast<std::int64_t>(*rec.satisfying)));
    t.rows.back().push_back(integer(static_cast<std::int64_t>(rec.assignments_checked)));
  }
  r.tables.push_back(std::move(t));
  return r;
}

}  // namespace detail

inline Report build_report(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::table1: return detail::table1_report(cfg);
    case Command::pk: return detail::pk_report(cfg);
    case Command::solve: return detail::solve_report(cfg);
    case Command::bell: return detail::bell_report(cfg);
    case Command::lhv: return detail::lhv_report(cfg);
    case Command::scan: return detail::scan_report(cfg);
    case Command::contradiction: return detail::contradiction_report(cfg);
  }
  throw DomainError("unknown command");
}

struct RunResult {
  int exit_code = kExitOk;
  std::string output;      // rendered report, empty on failure
  std::string diagnostic;  // one line on failure
};

inline std::optional<std::string> validate(const RunConfig& cfg) {
  if (!(cfg.tol > 0.0) || cfg.tol > kMaxTolerance) return "--tol must lie in (0, 1e-3]";
  return std::nullopt;
}

// Computes and renders the report without touching any stream or file.
inline RunResult run(const RunConfig& cfg) {
  RunResult result;
  if (auto problem = validate(cfg)) {
    result.exit_code = kExitUsage;
    result.diagnostic = "usage error: " + *problem;
    return result;
  }
  try {
    result.output = render(build_report(cfg), cfg.format);
  } catch (const DomainError& e) {
    result.exit_code = kExitDomain;
    result.diagnostic = std::string("domain error: ") + e.what();
  } catch (const RangeError& e) {
    result.exit_code = kExitNumeric;
    result.diagnostic = std::string("range error: ") + e.what();
  } catch (const ConvergenceError& e) {
    result.exit_code = kExitNumeric;
    result.diagnostic = std::string("convergence error: ") + e.what();
  } catch (const ConsistencyError& e) {
    result.exit_code = kExitNumeric;
    result.diagnostic = std::string("consistency error: ") + e.what();
  }
  if (result.exit_code != kExitOk) result.output.clear();
  return result;
}

// Runs and delivers the output to `out` or to cfg.output. The file is written
// only after the whole report has been computed; a failed write removes it.
inline int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  RunResult result = run(cfg);
  if (result.exit_code != kExitOk) {
    err << result.diagnostic << '\n';
    return result.exit_code;
  }
  if (!cfg.output) {
    out << result.output;
    out.flush();
    return kExitOk;
  }
  const std::filesystem::path path(*cfg.output);
  {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (file && file.write(result.output.data(), static_cast<std::streamsize>(result.output.size())) &&
        file.flush()) {
      return kExitOk;
    }
  }
  std::error_code ignored;
  std::filesystem::remove(path, ignored);
  err << "io error: cannot write " << path.string() << '\n';
  return kExitIo;
}

// ---------------------------------------------------------------------------
// Flag parsing

struct ParseOutcome {
  std::optional<RunConfig> config;
  int exit_code = kExitOk;  // meaningful when config is empty
  std::string message;      // help text or usage diagnostic
};

inline ParseOutcome parse_args(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"Ladder nonlocality calculator", "ladder"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "csv";
  std::string output;
  app.add_option("--tol", cfg.tol, "Zero tolerance for probability checks (0, 1e-3]")
      ->capture_default_str();
  app.add_option("--format", format, "Output encoding")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--output,-o", output, "Output file (default standard output)");
  app.add_flag("--degrees", cfg.degrees, "Read and print angles in degrees");

  auto* table1_cmd = app.add_subcommand("table1", "Optimal ratios r1, r2 and P_K^max for K = 1..kmax");
  table1_cmd->add_option("--kmax", cfg.kmax, "Largest K")->capture_default_str();

  double alpha_value = 0.0;
  auto* pk_cmd = app.add_subcommand("pk", "P_K closed forms with a state-vector cross-check");
  pk_cmd->add_option("--k", cfg.k, "Number of rungs K")->required();
  pk_cmd->add_option("--x", cfg.x, "Amplitude ratio alpha/beta")->required();
  auto* pk_alpha = pk_cmd->add_option("--alpha-k", alpha_value, "Free setting a_K");

  auto* solve_cmd = app.add_subcommand("solve", "Full settings chain from a_K");
  solve_cmd->add_option("--k", cfg.k, "Number of rungs K")->required();
  solve_cmd->add_option("--x", cfg.x, "Amplitude ratio alpha/beta")->required();
  auto* solve_alpha = solve_cmd->add_option("--alpha-k", alpha_value, "Free setting a_K")->required();

  auto* bell_cmd = app.add_subcommand("bell", "S_K components at equal settings");
  bell_cmd->add_option("--k", cfg.k, "Number of rungs K")->required();
  bell_cmd->add_option("--x", cfg.x, "Amplitude ratio alpha/beta")->required();

  auto* lhv_cmd = app.add_subcommand("lhv", "Classical bounds by exhaustive enumeration");
  lhv_cmd->add_option("--k", cfg.k, "Number of rungs K")->required();

  auto* scan_cmd = app.add_subcommand("scan", "Samples of m_K(x)");
  scan_cmd->add_option("--k", cfg.k, "Number of rungs K")->required();
  scan_cmd->add_option("--lo", cfg.lo, "First x")->required();
  scan_cmd->add_option("--hi", cfg.hi, "Last x")->required();
  scan_cmd->add_option("--steps", cfg.steps, "Number of samples")->required();

  auto* contra_cmd = app.add_subcommand("contradiction", "Parity argument for the limiting correlations");
  contra_cmd->add_option("--k", cfg.k, "Number of rungs K")->required();

  ParseOutcome outcome;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    outcome.exit_code = kExitOk;
    outcome.message = app.help();
    return outcome;
  } catch (const CLI::ParseError& e) {
    outcome.exit_code = kExitUsage;
    outcome.message = std::string("usage error: ") + e.what();
    return outcome;
  }

  const std::pair<CLI::App*, Command> commands[] = {
      {table1_cmd, Command::table1}, {pk_cmd, Command::pk},   {solve_cmd, Command::solve},
      {bell_cmd, Command::bell},     {lhv_cmd, Command::lhv}, {scan_cmd, Command::scan},
      {contra_cmd, Command::contradiction}};
  for (const auto& [sub, cmd] : commands) {
    if (sub->parsed()) cfg.command = cmd;
  }
  if (pk_alpha->count() > 0 || solve_alpha->count() > 0) cfg.alpha_k = alpha_value;
  cfg.format = format == "json" ? Format::json : Format::csv;
  if (!output.empty()) cfg.output = output;

  if (auto problem = validate(cfg)) {
    outcome.exit_code = kExitUsage;
    outcome.message = "usage error: " + *problem;
    return outcome;
  }
  outcome.config = cfg;
  return outcome;
}

}  // namespace ladder::cli
