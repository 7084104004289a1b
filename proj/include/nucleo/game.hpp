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

#ifndef NUCLEO_GAME_HPP
#define NUCLEO_GAME_HPP

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nucleo/coalition.hpp"
#include "nucleo/rational.hpp"

namespace nucleo {

/// Transferable-utility game with a dense worth table indexed by coalition
/// mask. The empty coalition is always worth zero.
class TUGame {
 public:
  /// All worths zero. Throws std::invalid_argument when n exceeds
  /// kMaxPlayersHard.
  explicit TUGame(std::size_t n);

  /// `worth` must hold exactly 2^n entries with worth[0] == 0.
  TUGame(std::size_t n, std::vector<Rational> worth);

  std::size_t player_count() const { return n_; }
  Coalition grand_coalition() const { return Coalition::grand(n_); }
  std::size_t coalition_count() const { return worth_.size(); }

  const Rational& worth(Coalition s) const;
  const Rational& operator()(Coalition s) const { return worth(s); }
  /// Rejects a nonzero worth for the empty coalition.
  void set_worth(Coalition s, Rational value);

  std::span<const Rational> worths() const { return worth_; }

  friend bool operator==(const TUGame&, const TUGame&) = default;

 private:
  std::size_t n_;
  std::vector<Rational> worth_;
};

/// Payoff vector, one entry per player.
class Allocation {
 public:
  Allocation() = default;
  explicit Allocation(std::size_t n) : payoffs_(n) {}
  explicit Allocation(std::vector<Rational> payoffs) : payoffs_(std::move(payoffs)) {}

  std::size_t size() const { return payoffs_.size(); }
  const Rational& operator[](Player p) const { return payoffs_[p]; }
  Rational& operator[](Player p) { return payoffs_[p]; }
  std::span<const Rational> payoffs() const { return payoffs_; }

  /// x(S)
  Rational sum(Coalition s) const;
  Rational total() const;

  std::string str() const;  // space separated canonical fractions

  friend bool operator==(const Allocation&, const Allocation&) = default;

 private:
  std::vector<Rational> payoffs_;
};

/// e(S, x) = v(S) - x(S). Throws std::invalid_argument on a size mismatch.
Rational excess(const TUGame& game, const Allocation& x, Coalition s);

/// Excesses of all proper nonempty coalitions, sorted non-increasing.
class ExcessVector {
 public:
  explicit ExcessVector(std::vector<Rational> values);
  std::span<const Rational> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  const Rational& front() const { return values_.front(); }

 private:
  std::vector<Rational> values_;
};

ExcessVector excess_vector(const TUGame& game, const Allocation& x);

/// Lexicographic order; throws std::invalid_argument on a length mismatch.
std::strong_ordering lex_compare(const ExcessVector& a, const ExcessVector& b);

struct ImputationReport {
  bool efficient = false;
  bool individually_rational = false;
  bool is_imputation() const { return efficient && individually_rational; }
};

ImputationReport check_imputation(const TUGame& game, const Allocation& x);

struct BlockingCoalition {
  Coalition coalition;
  Rational excess;
};

/// Proper nonempty coalitions with positive excess, by descending excess
/// then increasing mask.
std::vector<BlockingCoalition> blocking_coalitions(const TUGame& game, const Allocation& x);

struct ZeroMonotonicity {
  bool holds = true;
  /// First violation in (player, mask) order: v(S + i) < v(S) + v({i}).
  std::optional<std::pair<Coalition, Player>> witness;
};

ZeroMonotonicity is_zero_monotonic(const TUGame& game);

/// Restriction to the members of `players`, re-indexed in increasing order.
/// Throws std::invalid_argument for an empty or out-of-range coalition.
TUGame subgame(const TUGame& game, Coalition players);

/// Maps a coalition of the subgame on `players` back to the parent game.
Coalition lift_coalition(Coalition players, Coalition sub);

struct CoreCertificate {
  bool nonempty = false;
  std::optional<Allocation> witness;
};

/// Feasibility of { x : x(N) = v(N), x(S) >= v(S) for all S } by exact LP.
CoreCertificate core_nonempty(const TUGame& game);

struct TotalBalancedness {
  bool holds = true;
  std::size_t subgames_checked = 0;
  /// Lowest-mask coalition whose subgame has an empty core.
  std::optional<Coalition> witness;
};

/// Runs core_nonempty on every nonempty subgame, using up to `jobs` threads.
TotalBalancedness is_totally_balanced(const TUGame& game, std::size_t jobs = 1);

/// Rejects allocations whose length differs from the player count.
void require_size(const TUGame& game, const Allocation& x);

}  // namespace nucleo

#endif  // NUCLEO_GAME_HPP
