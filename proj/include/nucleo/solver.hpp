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

#ifndef NUCLEO_SOLVER_HPP
#define NUCLEO_SOLVER_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "nucleo/game.hpp"
#include "nucleo/lp.hpp"

namespace nucleo {

enum class SolutionConcept { prenucleolus, nucleolus };

const char* to_string(SolutionConcept mode);

// ---------------------------------------------------------------------------
// Kohlberg certification.

struct KohlbergLevel {
  Rational excess;
  /// Cumulative collection {S : e(S, x) >= excess}, increasing mask order.
  std::vector<Coalition> collection;
  /// Individually-rational-tight singletons admitted with weight >= 0
  /// (nucleolus mode only; those already in `collection` are not repeated).
  std::vector<Coalition> optional_members;
  lp::BalancednessResult balance;
};

struct KohlbergReport {
  SolutionConcept mode = SolutionConcept::prenucleolus;
  std::vector<KohlbergLevel> levels;  // strictly decreasing excess
  bool verdict = false;
  std::optional<std::size_t> first_failing_level;
};

struct KohlbergOptions {
  std::size_t jobs = 1;
};

/// Checks that every cumulative excess-level collection is balanced. Every
/// level is examined, even after a failure.
///
/// Throws std::invalid_argument when x is not efficient, or in nucleolus
/// mode when x is not individually rational.
KohlbergReport kohlberg_verify(const TUGame& game, const Allocation& x, SolutionConcept mode,
                               const KohlbergOptions& options = {});

// ---------------------------------------------------------------------------
// Nested-LP solver.

/// One stage of the lexicographic scheme.
struct StageState {
  std::size_t index = 0;  // 1-based
  Rational epsilon;       // optimal maximum excess of the stage
  std::vector<Coalition> fixed;  // coalitions tight in every optimum
  std::vector<Player> pinned;    // x_i = v({i}) in every optimum (nucleolus)
  std::size_t rank = 0;          // rank of all equalities after this stage
  std::size_t lp_solves = 0;
};

struct SolverResult {
  Allocation allocation;
  std::vector<StageState> stages;
  KohlbergReport certificate;
  /// Kohlberg verdict of the returned allocation. Reaching full rank is not
  /// enough on its own.
  bool verified = false;
};

struct SolverOptions {
  std::size_t jobs = 1;  // forwarded to the Kohlberg check
};

/// Throws std::invalid_argument for a game without players, and
/// std::domain_error in nucleolus mode when the imputation set is empty.
SolverResult solve(const TUGame& game, SolutionConcept mode, const SolverOptions& options = {});

Allocation prenucleolus(const TUGame& game);
Allocation nucleolus(const TUGame& game);

// ---------------------------------------------------------------------------
// Surpluses and (pre-)kernel membership.

/// max{ e(S, x) : i in S, j not in S }. Throws std::invalid_argument when
/// i == j or either player is out of range.
Rational max_surplus(const TUGame& game, const Allocation& x, Player i, Player j);

class SurplusMatrix {
 public:
  SurplusMatrix(const TUGame& game, const Allocation& x);

  std::size_t size() const { return n_; }
  /// Throws std::invalid_argument on the diagonal.
  const Rational& at(Player i, Player j) const;

 private:
  std::size_t n_;
  std::vector<Rational> values_;
};

struct KernelReport {
  bool prekernel = false;
  bool kernel = false;
  bool imputation = false;
  /// Ordered pairs (i, j) with s_ij > s_ji.
  std::vector<std::pair<Player, Player>> unbalanced_pairs;
  /// Subset of unbalanced_pairs where x_j > v({j}).
  std::vector<std::pair<Player, Player>> kernel_violations;
};

/// The kernel verdict is false for allocations that are not imputations.
KernelReport kernel_checks(const TUGame& game, const Allocation& x);

}  // namespace nucleo

#endif  // NUCLEO_SOLVER_HPP
