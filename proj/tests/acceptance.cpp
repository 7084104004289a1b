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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "nucleo/cli.hpp"
#include "nucleo/flow.hpp"
#include "nucleo/logic.hpp"
#include "nucleo/lp.hpp"
#include "nucleo/solver.hpp"
#include "support.hpp"

namespace {

using namespace nucleo;
using nucleo::testing::q;
using Clock = std::chrono::steady_clock;

const std::string kData = NUCLEO_DATA_DIR;

// Collects failed expectations for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  std::string summary() const {
    std::string out;
    for (const auto& f : failures_) out += (out.empty() ? "" : "; ") + f;
    return out;
  }
  void note(const std::string& text) { notes_ += (notes_.empty() ? "" : ", ") + text; }
  const std::string& notes() const { return notes_; }

 private:
  std::vector<std::string> failures_;
  std::string notes_;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Fixture {
  FlowNetwork net = nucleo::testing::flow10();
  TUGame game = build_flow_game(net);
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void grand_coalition_value(Check& c) {
  auto start = Clock::now();
  TUGame g = build_flow_game(nucleo::testing::flow10());
  double t = seconds_since(start);
  c.expect(g(g.grand_coalition()) == Rational(4), "v(N) = " + g(g.grand_coalition()).str());
  c.expect(t < 1.0, "build took " + std::to_string(t) + " s");
  c.note("v(N) = " + g(g.grand_coalition()).str());
}

void min_cuts(Check& c) {
  const auto& [net, g] = fixture();
  auto cuts = enumerate_min_cuts(net);
  std::vector<std::string> names;
  for (const auto& cut : cuts) {
    names.push_back(net.describe(cut));
    c.expect(net.capacity(cut) == Rational(4), net.describe(cut) + " capacity " + net.capacity(cut).str());
    auto blockers = blocking_coalitions(g, cut_allocation(net, cut));
    c.expect(blockers.empty(), net.describe(cut) + " allocation has " + std::to_string(blockers.size()) + " blockers");
  }
  std::sort(names.begin(), names.end());
  c.expect(names == std::vector<std::string>{"{f4,f5,f6,f7}", "{f4,f6,f10}"}, "unexpected cut list");
  for (const auto& n : names) c.note(n);
}

void counter_example(Check& c) {
  const auto& g = fixture().game;
  const Allocation x = nucleo::testing::xstar2();
  c.expect(excess(g, x, Coalition::from_labels({1, 4, 5, 8, 10})) == q("1/5"), "excess of {1,4,5,8,10}");
  auto blockers = blocking_coalitions(g, x);
  c.expect(blockers.size() == 10, std::to_string(blockers.size()) + " blocking coalitions");
  std::ostringstream out, err;
  int code = cli::run_command({"verify", kData + "/flow10.json", "--solution", kData + "/xstar2.json", "--checks", "core"},
                              out, err);
  c.expect(code == 1, "verify --checks core exited " + std::to_string(code));
  c.note("excess 1/5, " + std::to_string(blockers.size()) + " blockers, verify exit " + std::to_string(code));
}

void nucleolus_reproduction(Check& c) {
  const auto& g = fixture().game;
  auto start = Clock::now();
  SolverResult nuc = solve(g, SolutionConcept::nucleolus);
  SolverResult pre = solve(g, SolutionConcept::prenucleolus);
  double t = seconds_since(start);
  c.expect(nuc.allocation == nucleo::testing::nu(), "nucleolus " + nuc.allocation.str());
  c.expect(pre.allocation == nucleo::testing::nu(), "prenucleolus " + pre.allocation.str());
  c.expect(nuc.verified && pre.verified, "solver output not certified");
  c.expect(t < 60.0, "took " + std::to_string(t) + " s");
  c.note(nuc.allocation.str());
}

void certification_split(Check& c) {
  const auto& g = fixture().game;
  c.expect(kohlberg_verify(g, nucleo::testing::nu(), SolutionConcept::nucleolus).verdict, "Kohlberg rejects nu");
  c.expect(!kohlberg_verify(g, nucleo::testing::xstar2(), SolutionConcept::nucleolus).verdict,
           "Kohlberg accepts x*2");
  KernelReport kn = kernel_checks(g, nucleo::testing::nu());
  KernelReport kx = kernel_checks(g, nucleo::testing::xstar2());
  c.expect(kn.prekernel && kn.kernel, "nu outside the (pre-)kernel");
  c.expect(!kx.prekernel && !kx.kernel, "x*2 inside the (pre-)kernel");
}

void structural_claims(Check& c) {
  const auto& g = fixture().game;
  auto start = Clock::now();
  c.expect(is_zero_monotonic(g).holds, "not zero-monotonic");
  TotalBalancedness tb = is_totally_balanced(g, std::max(1u, std::thread::hardware_concurrency()));
  double t = seconds_since(start);
  c.expect(tb.holds, "empty core in subgame " + (tb.witness ? tb.witness->str() : std::string("?")));
  c.expect(tb.subgames_checked == 1023, std::to_string(tb.subgames_checked) + " subgames");
  c.expect(t < 600.0, "took " + std::to_string(t) + " s");
  c.note(std::to_string(tb.subgames_checked) + " subgames");
}

void logic_tables(Check& c) {
  using namespace nucleo::logic;
  // Published rows, FF FT TF TT.
  const std::vector<std::vector<std::string>> frozen = {
      {"FFTTFTTTFF", "FTFTFFFFFT", "TFTFTTFTFT", "TTFTFTTTTT"},
      {"FFTTTTTTFT", "FTTFFFTTFF", "TFFTTTFFTF", "TTFFTTTTFT"},
  };
  auto tables = indirect_proof_tables();
  c.expect(tables.size() == 2, "table count");
  for (std::size_t t = 0; t < std::min<std::size_t>(tables.size(), 2); ++t) {
    c.expect(tables[t].rows.size() == 4 && tables[t].headers.size() == 10, "table shape");
    for (std::size_t r = 0; r < tables[t].rows.size() && r < 4; ++r) {
      std::string row;
      for (bool b : tables[t].rows[r]) row += b ? 'T' : 'F';
      c.expect(row == frozen[t][r], "table " + std::to_string(t + 1) + " row " + std::to_string(r + 1) + " " + row);
    }
  }
  Formula A = Formula::atom("A"), B = Formula::atom("B");
  c.expect(equivalent(implies(A & !B, A & !A), implies(A, B)).equivalent, "contradiction form");
}

// Lex-minimality of `x` against at least `samples` points of the imputation
// set (or efficient hyperplane).
bool lex_minimal(const TUGame& g, const Allocation& x, bool ir, int samples, std::mt19937_64& rng) {
  ExcessVector theta = excess_vector(g, x);
  int done = 0;
  while (done < samples) {
    Allocation y = nucleo::testing::random_imputation(rng, g, ir);
    if (lex_compare(theta, excess_vector(g, y)) == std::strong_ordering::greater) return false;
    ++done;
    if (auto z = nucleo::testing::perturb(rng, g, x, ir)) {
      if (lex_compare(theta, excess_vector(g, *z)) == std::strong_ordering::greater) return false;
      ++done;
    }
  }
  return true;
}

std::vector<std::pair<std::string, TUGame>> corpus() {
  std::vector<std::pair<std::string, TUGame>> games;
  games.emplace_back("flow10", fixture().game);
  games.emplace_back("unanimity3", nucleo::testing::unanimity(3, Coalition::from_labels({1, 2})));
  games.emplace_back("glove3", nucleo::testing::glove3());
  std::mt19937_64 rng(8080);
  for (int k = 0; k < 7; ++k) {
    games.emplace_back("random" + std::to_string(k), nucleo::testing::random_game(rng, 3 + k % 4));
  }
  return games;
}

void property_suites(Check& c) {
  auto games = corpus();
  std::mt19937_64 rng(424242);
  for (const auto& [name, g] : games) {
    for (auto mode : {SolutionConcept::nucleolus, SolutionConcept::prenucleolus}) {
      SolverResult r = solve(g, mode);
      bool ir = mode == SolutionConcept::nucleolus;
      c.expect(r.verified, name + " " + to_string(mode) + " not certified");
      c.expect(lex_minimal(g, r.allocation, ir, 1000, rng), name + " " + to_string(mode) + " beaten by a sample");

      const std::size_t n = g.player_count();
      Rational a = nucleo::testing::random_rational(rng, 1, 4, 9);
      std::vector<Rational> b(n);
      for (auto& v : b) v = nucleo::testing::random_rational(rng, -3, 3, 7);
      TUGame h = nucleo::testing::game_from(n, [&](Coalition s) {
        Rational w = a * g(s);
        for (Player p : s.players()) w += b[p];
        return w;
      });
      Allocation y = solve(h, mode).allocation;
      bool covariant = true;
      for (Player p = 0; p < n; ++p) covariant = covariant && y[p] == a * r.allocation[p] + b[p];
      c.expect(covariant, name + " " + to_string(mode) + " not covariant");
    }
  }
  c.note(std::to_string(games.size()) + " games x 2 modes x 1000 samples");

  std::uniform_int_distribution<std::size_t> inner(0, 6);
  for (int k = 0; k < 50; ++k) {
    FlowNetwork net = nucleo::testing::random_network(rng, inner(rng), 6);
    Rational value = max_flow(net, net.all_edges());
    auto cuts = enumerate_min_cuts(net);
    c.expect(!cuts.empty(), "network " + std::to_string(k) + " has no enumerated cut");
    for (const auto& cut : cuts) c.expect(net.capacity(cut) == value, "network " + std::to_string(k) + " cut mismatch");
    c.expect(value == nucleo::testing::cut_oracle(net, Coalition::grand(net.player_count())),
             "network " + std::to_string(k) + " max flow differs from minimum bipartition");
  }
  c.note("50 networks");

  lp::SolveStatistics s = lp::solve_statistics();
  c.expect(s.optimal > 0 && s.certified == s.optimal && s.certification_failures == 0,
           "LP certification " + std::to_string(s.certified) + "/" + std::to_string(s.optimal));
  c.note(std::to_string(s.certified) + "/" + std::to_string(s.optimal) + " optimal LP solves certified");
}

void oracle_equivalence(Check& c) {
  const auto& [net, g] = fixture();
  int mismatches = 0;
  for (std::uint64_t m = 0; m < 1024; ++m) {
    if (g(Coalition(m)) != nucleo::testing::cut_oracle(net, Coalition(m))) ++mismatches;
  }
  c.expect(mismatches == 0, std::to_string(mismatches) + " worth mismatches");

  TUGame unanimity = nucleo::testing::unanimity(3, Coalition::from_labels({1, 2}));
  c.expect(nucleolus(unanimity) == nucleo::testing::payoffs({"1/2", "1/2", "0"}), "unanimity");
  // Symmetric game: worth depends on size only, so the split is equal.
  TUGame symmetric = nucleo::testing::game_from(3, [](Coalition s) {
    return std::vector<Rational>{0, 1, 3, q("9/2")}[s.size()];
  });
  c.expect(nucleolus(symmetric) == nucleo::testing::payoffs({"3/2", "3/2", "3/2"}), "symmetric");
  std::vector<Rational> a = {q("2/3"), Rational(0), Rational(5)};
  c.expect(nucleolus(nucleo::testing::additive(a)) == Allocation(a), "additive");
  c.note("1024 coalitions, 3 closed-form games");
}

}  // namespace

int main() {
  lp::reset_solve_statistics();
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"grand-coalition value", grand_coalition_value},
      {"minimum cuts", min_cuts},
      {"counter-example audit", counter_example},
      {"nucleolus reproduction", nucleolus_reproduction},
      {"certification split", certification_split},
      {"structural claims", structural_claims},
      {"logic tables", logic_tables},
      {"property suites", property_suites},
      {"oracle equivalence", oracle_equivalence},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Check check;
    auto start = Clock::now();
    try {
      criteria[k].second(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    double t = seconds_since(start);
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", t);
    std::cout << (check.ok() ? "PASS" : "FAIL") << " criterion " << (k + 1) << " (" << criteria[k].first
              << ", " << timing << ")";
    if (!check.notes().empty()) std::cout << ": " << check.notes();
    if (!check.ok()) std::cout << " -- " << check.summary();
    std::cout << std::endl;
    if (!check.ok()) ++failed;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
