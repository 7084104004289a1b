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

#include "nucleo/game.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <stdexcept>
#include <string>
#include <thread>

#include "nucleo/lp.hpp"

namespace nucleo {

TUGame::TUGame(std::size_t n) : n_(n) {
  if (n > kMaxPlayersHard) {
    throw std::invalid_argument("a dense game supports at most " + std::to_string(kMaxPlayersHard) +
                                " players, got " + std::to_string(n));
  }
  worth_.resize(std::size_t{1} << n);
}

TUGame::TUGame(std::size_t n, std::vector<Rational> worth) : TUGame(n) {
  if (worth.size() != worth_.size()) {
    throw std::invalid_argument("worth table has " + std::to_string(worth.size()) +
                                " entries, expected " + std::to_string(worth_.size()));
  }
  if (!worth[0].is_zero()) throw std::invalid_argument("worth of the empty coalition must be 0");
  worth_ = std::move(worth);
}

const Rational& TUGame::worth(Coalition s) const {
  if (!s.is_subset_of(grand_coalition())) {
    throw std::out_of_range("coalition " + s.str() + " outside " + std::to_string(n_) + " players");
  }
  return worth_[s.mask()];
}

void TUGame::set_worth(Coalition s, Rational value) {
  if (!s.is_subset_of(grand_coalition())) {
    throw std::out_of_range("coalition " + s.str() + " outside " + std::to_string(n_) + " players");
  }
  if (s.empty() && !value.is_zero()) {
    throw std::invalid_argument("worth of the empty coalition must be 0");
  }
  worth_[s.mask()] = std::move(value);
}

Rational Allocation::sum(Coalition s) const {
  Rational total;
  for (Player p : s.players()) total += payoffs_.at(p);
  return total;
}

Rational Allocation::total() const {
  Rational t;
  for (const auto& v : payoffs_) t += v;
  return t;
}

std::string Allocation::str() const {
  std::string out;
  for (std::size_t i = 0; i < payoffs_.size(); ++i) {
    if (i > 0) out += ' ';
    out += payoffs_[i].str();
  }
  return out;
}

void require_size(const TUGame& game, const Allocation& x) {
  if (x.size() != game.player_count()) {
    throw std::invalid_argument("allocation has " + std::to_string(x.size()) +
                                " payoffs for a " + std::to_string(game.player_count()) +
                                "-player game");
  }
}

Rational excess(const TUGame& game, const Allocation& x, Coalition s) {
  require_size(game, x);
  return game.worth(s) - x.sum(s);
}

namespace {

// x(S) for every mask, built incrementally from the lowest set bit.
std::vector<Rational> coalition_sums(const Allocation& x) {
  const std::size_t count = std::size_t{1} << x.size();
  std::vector<Rational> sums(count);
  for (std::size_t mask = 1; mask < count; ++mask) {
    const std::size_t low = static_cast<std::size_t>(std::countr_zero(mask));
    sums[mask] = sums[mask & (mask - 1)] + x[low];
  }
  return sums;
}

}  // namespace

ExcessVector::ExcessVector(std::vector<Rational> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end(), std::greater<>());
}

ExcessVector excess_vector(const TUGame& game, const Allocation& x) {
  require_size(game, x);
  const auto sums = coalition_sums(x);
  const std::uint64_t grand = game.grand_coalition().mask();
  std::vector<Rational> values;
  values.reserve(grand > 0 ? grand - 1 : 0);
  for (std::uint64_t mask = 1; mask < grand; ++mask) {
    values.push_back(game.worths()[mask] - sums[mask]);
  }
  return ExcessVector(std::move(values));
}

std::strong_ordering lex_compare(const ExcessVector& a, const ExcessVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("excess vectors of different lengths: " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (auto c = a.values()[i] <=> b.values()[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

ImputationReport check_imputation(const TUGame& game, const Allocation& x) {
  require_size(game, x);
  ImputationReport report;
  report.efficient = x.total() == game.worth(game.grand_coalition());
  report.individually_rational = true;
  for (Player p = 0; p < game.player_count(); ++p) {
    if (x[p] < game.worth(Coalition::singleton(p))) {
      report.individually_rational = false;
      break;
    }
  }
  return report;
}

std::vector<BlockingCoalition> blocking_coalitions(const TUGame& game, const Allocation& x) {
  require_size(game, x);
  const auto sums = coalition_sums(x);
  const std::uint64_t grand = game.grand_coalition().mask();
  std::vector<BlockingCoalition> out;
  for (std::uint64_t mask = 1; mask < grand; ++mask) {
    Rational e = game.worths()[mask] - sums[mask];
    if (e.sign() > 0) out.push_back({Coalition(mask), std::move(e)});
  }
  std::stable_sort(out.begin(), out.end(), [](const BlockingCoalition& a, const BlockingCoalition& b) {
    return a.excess > b.excess;
  });
  return out;
}

ZeroMonotonicity is_zero_monotonic(const TUGame& game) {
  const std::size_t n = game.player_count();
  const std::uint64_t count = std::uint64_t{1} << n;
  for (Player p = 0; p < n; ++p) {
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      const Coalition s(mask);
      if (s.contains(p)) continue;
      if (game.worth(s.with(p)) < game.worth(s) + game.worth(Coalition::singleton(p))) {
        return {false, std::make_pair(s, p)};
      }
    }
  }
  return {};
}

Coalition lift_coalition(Coalition players, Coalition sub) {
  std::uint64_t mask = 0;
  const auto members = players.players();
  for (Player q : sub.players()) mask |= std::uint64_t{1} << members.at(q);
  return Coalition(mask);
}

TUGame subgame(const TUGame& game, Coalition players) {
  if (players.empty()) throw std::invalid_argument("subgame on the empty coalition");
  if (!players.is_subset_of(game.grand_coalition())) {
    throw std::invalid_argument("subgame coalition " + players.str() + " outside the game");
  }
  const auto members = players.players();
  const std::size_t m = members.size();
  std::vector<Rational> worth(std::size_t{1} << m);
  for (std::uint64_t sub = 1; sub < worth.size(); ++sub) {
    std::uint64_t mask = 0;
    for (std::size_t q = 0; q < m; ++q) {
      if ((sub >> q) & 1U) mask |= std::uint64_t{1} << members[q];
    }
    worth[sub] = game.worths()[mask];
  }
  return TUGame(m, std::move(worth));
}

CoreCertificate core_nonempty(const TUGame& game) {
  const std::size_t n = game.player_count();
  if (n == 0) return {true, Allocation(0)};
  lp::LinearProgram program(n);
  const std::uint64_t grand = game.grand_coalition().mask();
  program.add_constraint(lp::incidence_vector(game.grand_coalition(), n), lp::Relation::equal,
                         game.worth(game.grand_coalition()));
  for (std::uint64_t mask = 1; mask < grand; ++mask) {
    program.add_constraint(lp::incidence_vector(Coalition(mask), n), lp::Relation::greater_equal,
                           game.worths()[mask]);
  }
  lp::Outcome outcome = lp::solve_lp(program);
  if (outcome.status != lp::Status::optimal) return {};
  return {true, Allocation(std::move(outcome.primal))};
}

TotalBalancedness is_totally_balanced(const TUGame& game, std::size_t jobs) {
  const std::uint64_t count = std::uint64_t{1} << game.player_count();
  std::vector<char> ok(count, 1);
  std::atomic<std::uint64_t> next{1};
  auto worker = [&] {
    for (std::uint64_t mask = next++; mask < count; mask = next++) {
      ok[mask] = core_nonempty(subgame(game, Coalition(mask))).nonempty ? 1 : 0;
    }
  };
  jobs = std::max<std::size_t>(1, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  TotalBalancedness result;
  result.subgames_checked = count > 0 ? count - 1 : 0;
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    if (!ok[mask]) {
      result.holds = false;
      result.witness = Coalition(mask);
      break;
    }
  }
  return result;
}

}  // namespace nucleo
