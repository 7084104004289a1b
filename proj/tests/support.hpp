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

#ifndef NUCLEO_TESTS_SUPPORT_HPP
#define NUCLEO_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nucleo/coalition.hpp"
#include "nucleo/flow.hpp"
#include "nucleo/game.hpp"
#include "nucleo/rational.hpp"

// Fixtures and independent oracles shared by the unit tests and the
// acceptance binary. Nothing here calls the solver or the max-flow routine.
namespace nucleo::testing {

inline Rational q(const char* text) { return Rational::parse(text); }

inline Allocation payoffs(std::initializer_list<const char*> values) {
  std::vector<Rational> out;
  for (const char* v : values) out.push_back(Rational::parse(v));
  return Allocation(std::move(out));
}

// The ten-player network: four inner nodes, edge f_i owned by player i.
inline FlowNetwork flow10() {
  std::vector<EdgeSpec> edges = {
      {"f1", "s", "1", 3, 1},  {"f2", "s", "2", 2, 2},  {"f3", "1", "2", 1, 3},
      {"f4", "1", "3", 1, 4},  {"f5", "1", "4", 1, 5},  {"f6", "2", "3", 1, 6},
      {"f7", "2", "4", 1, 7},  {"f8", "3", "4", 1, 8},  {"f9", "3", "t", 3, 9},
      {"f10", "4", "t", 2, 10},
  };
  return FlowNetwork::create({"s", "1", "2", "3", "4", "t"}, "s", "t", edges);
}

inline Allocation xstar2() {
  return payoffs({"1", "0.2", "0", "0.2", "0.4", "0.4", "0.6", "0", "1", "0.2"});
}

inline Allocation nu() {
  return payoffs({"11/15", "1/5", "0", "1/3", "1/5", "3/5", "1/3", "0", "8/15", "16/15"});
}

template <class F>
TUGame game_from(std::size_t n, F&& worth) {
  TUGame g(n);
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) g.set_worth(Coalition(m), worth(Coalition(m)));
  return g;
}

inline TUGame additive(const std::vector<Rational>& a) {
  return game_from(a.size(), [&](Coalition s) {
    Rational sum;
    for (Player p : s.players()) sum += a[p];
    return sum;
  });
}

inline TUGame unanimity(std::size_t n, Coalition carrier) {
  return game_from(n, [&](Coalition s) { return Rational(carrier.is_subset_of(s) ? 1 : 0); });
}

// Player 1 holds the only left glove; players 2 and 3 hold right gloves.
inline TUGame glove3() {
  return game_from(3, [](Coalition s) { return Rational(s.contains(0) && s.size() >= 2 ? 1 : 0); });
}

// Minimum-cut value of the subnetwork owned by `s`, by enumerating every
// source/sink bipartition of the nodes. Equal to the maximum flow by duality,
// so it serves as an oracle independent of any augmenting-path code.
inline Rational cut_oracle(const FlowNetwork& net, Coalition s) {
  const std::size_t nodes = net.nodes().size();
  std::vector<std::size_t> inner;
  for (std::size_t v = 0; v < nodes; ++v) {
    if (v != net.source() && v != net.sink()) inner.push_back(v);
  }
  std::optional<Rational> best;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << inner.size()); ++m) {
    std::vector<bool> source_side(nodes, false);
    source_side[net.source()] = true;
    for (std::size_t k = 0; k < inner.size(); ++k) {
      if ((m >> k) & 1U) source_side[inner[k]] = true;
    }
    Rational cap;
    for (const Edge& e : net.edges()) {
      if (s.contains(e.player()) && source_side[e.tail] && !source_side[e.head]) cap += e.capacity;
    }
    if (!best || cap < *best) best = cap;
  }
  return *best;
}

// Whether the edges of players in `s` alone contain a source-to-sink path,
// by plain reachability.
inline bool owns_path(const FlowNetwork& net, Coalition s) {
  std::vector<bool> seen(net.nodes().size(), false);
  std::vector<std::size_t> stack = {net.source()};
  seen[net.source()] = true;
  while (!stack.empty()) {
    std::size_t u = stack.back();
    stack.pop_back();
    for (const Edge& e : net.edges()) {
      if (e.tail == u && s.contains(e.player()) && e.capacity > 0 && !seen[e.head]) {
        seen[e.head] = true;
        stack.push_back(e.head);
      }
    }
  }
  return seen[net.sink()];
}

inline Rational random_rational(std::mt19937_64& rng, int lo, int hi, int max_den) {
  std::uniform_int_distribution<int> den(1, max_den);
  int d = den(rng);
  std::uniform_int_distribution<int> num(lo * d, hi * d);
  return Rational(BigInt(num(rng)), BigInt(d));
}

// Small random network on `inner` inner nodes with owners compacted to 1..n.
inline FlowNetwork random_network(std::mt19937_64& rng, std::size_t inner, std::size_t max_players) {
  std::vector<std::string> nodes = {"s"};
  for (std::size_t k = 0; k < inner; ++k) nodes.push_back("v" + std::to_string(k));
  nodes.push_back("t");
  std::bernoulli_distribution coin(0.45);
  std::uniform_int_distribution<std::size_t> owner(1, max_players);
  std::vector<EdgeSpec> edges;
  for (std::size_t u = 0; u + 1 < nodes.size(); ++u) {
    for (std::size_t v = 1; v < nodes.size(); ++v) {
      if (u == v || !coin(rng)) continue;
      edges.push_back({"e" + std::to_string(edges.size() + 1), nodes[u], nodes[v],
                       random_rational(rng, 0, 6, 3), owner(rng)});
    }
  }
  if (edges.empty()) edges.push_back({"e1", "s", "t", random_rational(rng, 0, 6, 3), 1});
  std::vector<std::size_t> used;
  for (const auto& e : edges) used.push_back(e.owner);
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  for (auto& e : edges) {
    e.owner = static_cast<std::size_t>(std::lower_bound(used.begin(), used.end(), e.owner) - used.begin()) + 1;
  }
  return FlowNetwork::create(nodes, "s", "t", edges);
}

// Random game whose imputation set is nonempty.
inline TUGame random_game(std::mt19937_64& rng, std::size_t n) {
  TUGame g = game_from(n, [&](Coalition s) { return random_rational(rng, -2, 3 * static_cast<int>(s.size()), 4); });
  Rational singles;
  for (Player p = 0; p < n; ++p) singles += g(Coalition::singleton(p));
  if (g(g.grand_coalition()) < singles) g.set_worth(g.grand_coalition(), singles + random_rational(rng, 0, 3, 2));
  return g;
}

// Random point of the imputation set (or of the efficient hyperplane when
// `ir` is false), spread over the whole set.
inline Allocation random_imputation(std::mt19937_64& rng, const TUGame& g, bool ir = true) {
  const std::size_t n = g.player_count();
  std::vector<Rational> floor(n);
  Rational slack = g(g.grand_coalition());
  for (Player p = 0; p < n; ++p) {
    floor[p] = ir ? g(Coalition::singleton(p)) : g(Coalition::singleton(p)) - Rational(2);
    slack -= floor[p];
  }
  std::uniform_int_distribution<int> weight(0, 30);
  std::vector<int> w(n);
  int total = 0;
  while (total == 0) {
    total = 0;
    for (auto& x : w) total += (x = weight(rng));
  }
  Allocation y(n);
  for (Player p = 0; p < n; ++p) y[p] = floor[p] + slack * Rational(w[p]) / Rational(total);
  return y;
}

// Efficient point near `x`: moves a random amount between two players.
// Returns nothing when the move leaves the imputation set and `ir` is set.
inline std::optional<Allocation> perturb(std::mt19937_64& rng, const TUGame& g, const Allocation& x, bool ir) {
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  Player i = pick(rng);
  Player j = pick(rng);
  if (i == j) return std::nullopt;
  Rational step = random_rational(rng, 0, 1, 60);
  if (step.is_zero()) step = Rational(1, 97);
  Allocation y = x;
  y[i] += step;
  y[j] -= step;
  if (ir && y[j] < g(Coalition::singleton(j))) return std::nullopt;
  return y;
}

}  // namespace nucleo::testing

#endif  // NUCLEO_TESTS_SUPPORT_HPP
