// Copyright 2026 The Nucleo Authors.
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

#include "nucleo/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "nucleo/flow.hpp"
#include "nucleo/game.hpp"
#include "nucleo/io.hpp"
#include "nucleo/logic.hpp"
#include "nucleo/solver.hpp"

#ifndef NUCLEO_DATA_DIR
#define NUCLEO_DATA_DIR "data"
#endif

namespace nucleo::cli {

std::string RunReport::render_text() const {
  std::ostringstream out;
  out << "command: " << command << '\n';
  for (const auto& [name, hash] : inputs) out << "input: " << name << " fnv1a64:" << hash << '\n';
  for (const auto& [key, value] : results) out << key << ": " << value << '\n';
  out << "exit: " << exit_code << ' '
      << (exit_code == kPass ? "(pass)" : exit_code == kFail ? "(fail)" : "(error)") << '\n';
  return out.str();
}

std::string RunReport::render_json() const {
  nlohmann::ordered_json doc;
  doc["command"] = command;
  doc["inputs"] = nlohmann::ordered_json::array();
  for (const auto& [name, hash] : inputs) doc["inputs"].push_back({{"file", name}, {"fnv1a64", hash}});
  doc["results"] = nlohmann::ordered_json::array();
  for (const auto& [key, value] : results) doc["results"].push_back({{"key", key}, {"value", value}});
  doc["exit_code"] = exit_code;
  return doc.dump(2) + "\n";
}

namespace {

struct Settings {
  std::size_t jobs = 1;
  std::size_t max_players = 20;
  int decimals = -1;
  std::string format = "text";
};

std::size_t default_player_limit() {
  if (const char* env = std::getenv("NUCLEO_MAX_PLAYERS"); env != nullptr && *env != '\0') {
    try {
      return static_cast<std::size_t>(std::stoul(env));
    } catch (const std::exception&) {
      // fall through to the default
    }
  }
  return 20;
}

std::string yes_no(bool value) { return value ? "yes" : "no"; }

std::string decimals_of(const Allocation& x, int places) {
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i > 0) out += ' ';
    out += x[i].to_decimal(places);
  }
  return out;
}

struct LoadedGame {
  TUGame game;
  std::optional<FlowNetwork> network;
};

std::string file_name(const std::string& path) { return std::filesystem::path(path).filename().string(); }

LoadedGame load_game(const std::string& path, const Settings& settings, RunReport& report) {
  const std::string text = io::read_file(path);
  report.inputs.emplace_back(file_name(path), io::digest(text));
  if (io::detect_kind(text, path) == io::DocumentKind::network) {
    FlowNetwork net = io::parse_network(text, path);
    TUGame game = build_flow_game(net, {settings.max_players, settings.jobs});
    return {std::move(game), std::move(net)};
  }
  if (io::detect_kind(text, path) != io::DocumentKind::game) {
    throw io::ParseError(path, "/", "expected a network or game document");
  }
  return {io::parse_game(text, path, settings.max_players), std::nullopt};
}

FlowNetwork load_network(const std::string& path, RunReport& report) {
  const std::string text = io::read_file(path);
  report.inputs.emplace_back(file_name(path), io::digest(text));
  return io::parse_network(text, path);
}

Allocation load_solution(const std::string& path, const TUGame& game, RunReport& report) {
  const std::string text = io::read_file(path);
  report.inputs.emplace_back(file_name(path), io::digest(text));
  Allocation x = io::parse_solution(text, path);
  if (x.size() != game.player_count()) {
    throw io::ParseError(path, "/payoffs",
                         "expected " + std::to_string(game.player_count()) + " payoffs, found " +
                             std::to_string(x.size()));
  }
  return x;
}

SolutionConcept parse_mode(const std::string& text) {
  return text == "prenucleolus" ? SolutionConcept::prenucleolus : SolutionConcept::nucleolus;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// ---------------------------------------------------------------------------

void command_convert(const std::string& network_path, const std::string& output, const Settings& settings,
                     RunReport& report, std::ostream& out) {
  LoadedGame loaded = load_game(network_path, settings, report);
  const std::string doc = io::game_to_json(loaded.game);
  if (output.empty()) {
    out << doc;
    report.exit_code = -1;  // document already written
    return;
  }
  std::ofstream file(output, std::ios::binary);
  if (!file) throw io::ParseError(output, "-", "cannot write file");
  file << doc;
  report.add("players", std::to_string(loaded.game.player_count()));
  report.add("v(N)", loaded.game.worth(loaded.game.grand_coalition()).str());
  report.add("written", file_name(output));
}

void add_payoffs(RunReport& report, const Allocation& x, const Settings& settings) {
  report.add("payoffs", x.str());
  if (settings.decimals >= 0) report.add("payoffs (rounded)", decimals_of(x, settings.decimals));
}

void command_solve(const std::string& input, const std::string& method, const std::string& output,
                   const Settings& settings, RunReport& report) {
  LoadedGame loaded = load_game(input, settings, report);
  const SolutionConcept mode = parse_mode(method);
  report.add("method", to_string(mode));
  report.add("players", std::to_string(loaded.game.player_count()));
  SolverResult result = solve(loaded.game, mode, {settings.jobs});
  for (const StageState& stage : result.stages) {
    std::string fixed;
    for (Coalition s : stage.fixed) fixed += (fixed.empty() ? "" : " ") + s.str();
    for (Player p : stage.pinned) fixed += (fixed.empty() ? "" : " ") + std::string("x") + std::to_string(p + 1) + "=v";
    report.add("stage " + std::to_string(stage.index),
               "epsilon " + stage.epsilon.str() + ", rank " + std::to_string(stage.rank) + ", fixed " + fixed);
  }
  add_payoffs(report, result.allocation, settings);
  report.add("kohlberg", result.verified ? "verified (" + std::to_string(result.certificate.levels.size()) + " levels balanced)"
                                         : "NOT verified");
  if (!output.empty()) {
    std::ofstream file(output, std::ios::binary);
    if (!file) throw io::ParseError(output, "-", "cannot write file");
    file << io::solution_to_json(result.allocation);
    report.add("written", file_name(output));
  }
  report.exit_code = result.verified ? kPass : kFail;
}

bool check_imputation_into(const TUGame& game, const Allocation& x, RunReport& report) {
  const ImputationReport r = check_imputation(game, x);
  report.add("check imputation", std::string(r.is_imputation() ? "pass" : "FAIL") + " (efficient: " +
                                     yes_no(r.efficient) + ", individually rational: " +
                                     yes_no(r.individually_rational) + ")");
  return r.is_imputation();
}

bool check_core_into(const TUGame& game, const Allocation& x, RunReport& report) {
  const bool efficient = check_imputation(game, x).efficient;
  const auto blockers = blocking_coalitions(game, x);
  const bool pass = efficient && blockers.empty();
  std::string summary = pass ? "pass" : "FAIL";
  summary += " (" + std::to_string(blockers.size()) + " blocking coalitions";
  if (!efficient) summary += ", not efficient";
  summary += ")";
  report.add("check core", summary);
  for (std::size_t k = 0; k < blockers.size(); ++k) {
    report.add("blocking " + std::to_string(k + 1),
               blockers[k].coalition.str() + " excess " + blockers[k].excess.str());
  }
  return pass;
}

bool check_kohlberg_into(const TUGame& game, const Allocation& x, SolutionConcept mode,
                         const Settings& settings, RunReport& report) {
  const ImputationReport imp = check_imputation(game, x);
  if (!imp.efficient || (mode == SolutionConcept::nucleolus && !imp.individually_rational)) {
    report.add("check kohlberg", std::string("FAIL (") + (imp.efficient ? "not an imputation" : "not efficient") + ")");
    return false;
  }
  const KohlbergReport k = kohlberg_verify(game, x, mode, {settings.jobs});
  std::string summary = k.verdict ? "pass" : "FAIL";
  summary += std::string(" (") + to_string(mode) + " mode, " + std::to_string(k.levels.size()) + " levels";
  if (k.first_failing_level) summary += ", first unbalanced level " + std::to_string(*k.first_failing_level + 1);
  summary += ")";
  report.add("check kohlberg", summary);
  for (std::size_t i = 0; i < k.levels.size(); ++i) {
    const KohlbergLevel& level = k.levels[i];
    std::string line = "excess " + level.excess.str() + ", " + std::to_string(level.collection.size()) +
                       " coalitions, ";
    if (level.balance.balanced) {
      line += "balanced";
    } else {
      line += "NOT balanced";
      if (level.balance.witness) line += " (no positive weight for " + level.balance.witness->str() + ")";
    }
    report.add("level " + std::to_string(i + 1), line);
  }
  return k.verdict;
}

bool check_kernel_into(const TUGame& game, const Allocation& x, RunReport& report) {
  const KernelReport k = kernel_checks(game, x);
  const bool pass = k.prekernel && k.kernel;
  report.add("check kernel", std::string(pass ? "pass" : "FAIL") + " (prekernel: " + yes_no(k.prekernel) +
                                 ", kernel: " + yes_no(k.kernel) + ")");
  if (!k.unbalanced_pairs.empty()) {
    const SurplusMatrix s(game, x);
    const auto [i, j] = k.unbalanced_pairs.front();
    report.add("unbalanced pair", "s(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " +
                                      s.at(i, j).str() + " > s(" + std::to_string(j + 1) + "," +
                                      std::to_string(i + 1) + ") = " + s.at(j, i).str());
  }
  return pass;
}

void command_verify(const std::string& input, const std::string& solution_path, const std::string& checks,
                    const std::string& mode_text, const Settings& settings, RunReport& report) {
  LoadedGame loaded = load_game(input, settings, report);
  const Allocation x = load_solution(solution_path, loaded.game, report);
  const SolutionConcept mode = parse_mode(mode_text);
  add_payoffs(report, x, settings);
  bool all = true;
  for (const std::string& check : split_list(checks)) {
    if (check == "imputation") {
      all = check_imputation_into(loaded.game, x, report) && all;
    } else if (check == "core") {
      all = check_core_into(loaded.game, x, report) && all;
    } else if (check == "kohlberg") {
      all = check_kohlberg_into(loaded.game, x, mode, settings, report) && all;
    } else if (check == "kernel") {
      all = check_kernel_into(loaded.game, x, report) && all;
    } else {
      throw CLI::ValidationError("--checks", "unknown check \"" + check + "\"");
    }
  }
  report.exit_code = all ? kPass : kFail;
}

void command_cuts(const std::string& network_path, RunReport& report) {
  const FlowNetwork net = load_network(network_path, report);
  const Rational value = max_flow(net, net.all_edges());
  report.add("max flow", value.str());
  const auto cuts = enumerate_min_cuts(net);
  report.add("minimum cuts", std::to_string(cuts.size()));
  std::optional<TUGame> game;
  if (net.player_count() <= 20) game = build_flow_game(net);
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    const Allocation x = cut_allocation(net, cuts[k]);
    std::string line = net.describe(cuts[k]) + " capacity " + net.capacity(cuts[k]).str() + ", allocation " + x.str();
    if (game) line += ", blocking coalitions " + std::to_string(blocking_coalitions(*game, x).size());
    report.add("cut " + std::to_string(k + 1), line);
  }
}

void command_props(const std::string& input, const std::string& checks, const Settings& settings, RunReport& report) {
  LoadedGame loaded = load_game(input, settings, report);
  bool all = true;
  for (const std::string& check : split_list(checks)) {
    if (check == "zero-monotone") {
      const ZeroMonotonicity z = is_zero_monotonic(loaded.game);
      std::string line = yes_no(z.holds);
      if (z.witness) {
        const auto& [s, p] = *z.witness;
        line += " (v(" + s.with(p).str() + ") < v(" + s.str() + ") + v({" + std::to_string(p + 1) + "}))";
      }
      report.add("zero-monotone", line);
      all = all && z.holds;
    } else if (check == "totally-balanced") {
      const TotalBalancedness t = is_totally_balanced(loaded.game, settings.jobs);
      std::string line = yes_no(t.holds) + " (" + std::to_string(t.subgames_checked) + " subgames)";
      if (t.witness) line += ", empty core on " + t.witness->str();
      report.add("totally-balanced", line);
      all = all && t.holds;
    } else {
      throw CLI::ValidationError("--checks", "unknown property \"" + check + "\"");
    }
  }
  report.exit_code = all ? kPass : kFail;
}

void command_logic(RunReport& report, std::ostream& out) {
  const auto tables = logic::indirect_proof_tables();
  for (std::size_t t = 0; t < tables.size(); ++t) {
    out << "table " << (t + 1) << ":\n" << logic::render(tables[t]) << '\n';
  }
  bool all = true;
  for (const auto& claim : logic::indirect_proof_equivalences()) {
    const auto verdict = logic::equivalent(claim.lhs, claim.rhs);
    std::string line = claim.lhs.str() + " ≡ " + claim.rhs.str() + ": " + (verdict.equivalent ? "equivalent" : "not equivalent");
    if (verdict.counterexample) {
      line += " (";
      bool first = true;
      for (const auto& [atom, value] : *verdict.counterexample) {
        line += (first ? "" : ", ") + atom + "=" + (value ? "T" : "F");
        first = false;
      }
      line += ")";
    }
    if (verdict.equivalent != claim.expected) {
      line += " UNEXPECTED";
      all = false;
    }
    report.add(claim.label, line);
  }
  report.exit_code = all ? kPass : kFail;
}

// ---------------------------------------------------------------------------

Allocation allocation_of(std::initializer_list<const char*> values) {
  std::vector<Rational> out;
  for (const char* v : values) out.push_back(Rational::parse(v));
  return Allocation(std::move(out));
}

void command_report(const std::string& network_path, const Settings& settings, RunReport& report) {
  const FlowNetwork net = load_network(network_path, report);
  bool all = true;
  auto claim = [&](const std::string& key, bool ok, const std::string& detail) {
    report.add(key, std::string(ok ? "ok " : "MISMATCH ") + detail);
    all = all && ok;
  };

  const TUGame game = build_flow_game(net, {settings.max_players, settings.jobs});
  const Rational grand = game.worth(game.grand_coalition());
  claim("v(N)", grand == Rational(4), grand.str() + " (expected 4)");

  const Coalition probe = Coalition::from_labels({1, 4, 5, 8, 10});
  claim("v({1,4,5,8,10})", game.worth(probe) == Rational(2), game.worth(probe).str() + " (expected 2)");

  const auto cuts = enumerate_min_cuts(net);
  std::vector<std::string> described;
  bool cuts_core = true;
  for (const auto& c : cuts) {
    described.push_back(net.describe(c) + " capacity " + net.capacity(c).str());
    cuts_core = cuts_core && blocking_coalitions(game, cut_allocation(net, c)).empty();
  }
  std::vector<std::string> expected_cuts{"{f4,f5,f6,f7} capacity 4", "{f4,f6,f10} capacity 4"};
  std::string cut_text;
  for (const auto& d : described) cut_text += (cut_text.empty() ? "" : "; ") + d;
  claim("minimum cuts", described == expected_cuts, cut_text);
  claim("cut allocations in core", cuts_core, cuts_core ? "no blocking coalitions" : "blocked");

  const Allocation proposed = allocation_of({"1", "0.2", "0", "0.2", "0.4", "0.4", "0.6", "0", "1", "0.2"});
  const Allocation reference = allocation_of({"11/15", "1/5", "0", "1/3", "1/5", "3/5", "1/3", "0", "8/15", "16/15"});

  const Rational e = excess(game, proposed, probe);
  claim("excess of {1,4,5,8,10} at proposed x", e == Rational::parse("1/5"), e.str() + " (expected 1/5)");
  const auto blockers = blocking_coalitions(game, proposed);
  claim("blocking coalitions at proposed x", blockers.size() == 10, std::to_string(blockers.size()) + " (expected 10)");

  const SolverResult nuc = solve(game, SolutionConcept::nucleolus, {settings.jobs});
  claim("nucleolus", nuc.allocation == reference, nuc.allocation.str());
  const SolverResult pre = solve(game, SolutionConcept::prenucleolus, {settings.jobs});
  claim("prenucleolus", pre.allocation == reference, pre.allocation.str());
  const Rational e_ref = excess(game, reference, probe);
  claim("excess of {1,4,5,8,10} at nucleolus", e_ref == Rational::parse("-1/3"), e_ref.str() + " (expected -1/3)");
  claim("efficiency of nucleolus", reference.total() == grand, reference.total().str());

  const bool k_ref = kohlberg_verify(game, reference, SolutionConcept::nucleolus, {settings.jobs}).verdict;
  const bool k_prop = kohlberg_verify(game, proposed, SolutionConcept::nucleolus, {settings.jobs}).verdict;
  claim("kohlberg at nucleolus", k_ref, yes_no(k_ref));
  claim("kohlberg at proposed x", !k_prop, yes_no(k_prop) + " (expected no)");

  const KernelReport kr = kernel_checks(game, reference);
  claim("kernel at nucleolus", kr.prekernel && kr.kernel,
        "prekernel " + yes_no(kr.prekernel) + ", kernel " + yes_no(kr.kernel));
  const KernelReport kp = kernel_checks(game, proposed);
  claim("kernel at proposed x", !kp.prekernel && !kp.kernel,
        "prekernel " + yes_no(kp.prekernel) + ", kernel " + yes_no(kp.kernel) + " (expected no, no)");

  const bool zm = is_zero_monotonic(game).holds;
  claim("zero-monotone", zm, yes_no(zm));
  const TotalBalancedness tb = is_totally_balanced(game, settings.jobs);
  claim("totally balanced", tb.holds, yes_no(tb.holds) + " (" + std::to_string(tb.subgames_checked) + " subgames)");

  bool logic_ok = true;
  for (const auto& c : logic::indirect_proof_equivalences()) {
    logic_ok = logic_ok && logic::equivalent(c.lhs, c.rhs).equivalent == c.expected;
  }
  claim("logic equivalences", logic_ok, yes_no(logic_ok));
  report.exit_code = all ? kPass : kFail;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact nucleolus computation and certification for TU and flow games", "nucleo"};
  app.require_subcommand(1);
  Settings settings;
  settings.max_players = default_player_limit();
  app.add_option("--jobs", settings.jobs, "Concurrent coalition evaluations")->check(CLI::PositiveNumber);
  app.add_option("--max-players", settings.max_players,
                 "Enumeration limit on players (default 20, or $NUCLEO_MAX_PLAYERS)");
  app.add_option("--decimals", settings.decimals, "Also show payoffs rounded to this many places")
      ->check(CLI::Range(0, 30));
  app.add_option("--format", settings.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.fallthrough();

  std::string input;
  std::string output;
  std::string method = "nucleolus";
  std::string solution;
  std::string checks = "imputation,core,kohlberg,kernel";
  std::string prop_checks = "zero-monotone,totally-balanced";
  std::string mode = "nucleolus";
  std::string network = std::string(NUCLEO_DATA_DIR) + "/flow10.json";

  auto* convert = app.add_subcommand("convert", "Build the TU game of a flow network");
  convert->add_option("network", input, "Network file")->required();
  convert->add_option("-o,--output", output, "Write the game here instead of stdout");

  auto* solve_cmd = app.add_subcommand("solve", "Compute the nucleolus or pre-nucleolus");
  solve_cmd->add_option("input", input, "Network or game file")->required();
  solve_cmd->add_option("--method", method, "nucleolus|prenucleolus")
      ->check(CLI::IsMember({"nucleolus", "prenucleolus"}));
  solve_cmd->add_option("-o,--output", output, "Also write a solution file");

  auto* verify = app.add_subcommand("verify", "Certify a proposed allocation");
  verify->add_option("input", input, "Network or game file")->required();
  verify->add_option("--solution", solution, "Solution file")->required();
  verify->add_option("--checks", checks, "Comma list of imputation,core,kohlberg,kernel");
  verify->add_option("--mode", mode, "Kohlberg mode: nucleolus|prenucleolus")
      ->check(CLI::IsMember({"nucleolus", "prenucleolus"}));

  auto* cuts = app.add_subcommand("cuts", "Enumerate minimum cuts and their allocations");
  cuts->add_option("network", input, "Network file")->required();

  auto* props = app.add_subcommand("props", "Structural properties of a game");
  props->add_option("input", input, "Network or game file")->required();
  props->add_option("--checks", prop_checks, "Comma list of zero-monotone,totally-balanced");

  auto* logic_cmd = app.add_subcommand("logic-tables", "Truth tables and equivalences of the indirect proof");

  auto* report_cmd = app.add_subcommand("report-paper", "Regenerate every flow-game figure and check it");
  report_cmd->add_option("--network", network, "Network file")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kParseError;
  }

  RunReport report;
  report.command = app.get_subcommands().front()->get_name();
  try {
    if (convert->parsed()) {
      command_convert(input, output, settings, report, out);
      if (report.exit_code < 0) return kPass;
    } else if (solve_cmd->parsed()) {
      command_solve(input, method, output, settings, report);
    } else if (verify->parsed()) {
      command_verify(input, solution, checks, mode, settings, report);
    } else if (cuts->parsed()) {
      command_cuts(input, report);
    } else if (props->parsed()) {
      command_props(input, prop_checks, settings, report);
    } else if (logic_cmd->parsed()) {
      command_logic(report, out);
    } else if (report_cmd->parsed()) {
      command_report(network, settings, report);
    }
  } catch (const io::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const LimitError& e) {
    err << "error: " << e.what() << '\n'
        << "hint: pass --max-players N or set NUCLEO_MAX_PLAYERS to allow larger games\n";
    return kLimitExceeded;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kFail;
  }

  out << (settings.format == "json" ? report.render_json() : report.render_text());
  return report.exit_code;
}

}  // namespace nucleo::cli
