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

#ifndef NUCLEO_LP_HPP
#define NUCLEO_LP_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nucleo/coalition.hpp"
#include "nucleo/rational.hpp"

namespace nucleo::lp {

enum class Sense { minimize, maximize };
enum class Relation { less_equal, equal, greater_equal };
enum class Status { optimal, infeasible, unbounded };

const char* to_string(Status status);

struct Constraint {
  std::vector<Rational> coefficients;
  Relation relation = Relation::greater_equal;
  Rational rhs;
};

/// Variables are free unless a bound is set.
struct Bounds {
  std::optional<Rational> lower;
  std::optional<Rational> upper;
};

class LinearProgram {
 public:
  explicit LinearProgram(std::size_t variables, Sense sense = Sense::minimize);

  std::size_t variable_count() const { return objective_.size(); }
  std::size_t constraint_count() const { return constraints_.size(); }

  Sense sense() const { return sense_; }
  void set_sense(Sense sense) { sense_ = sense; }

  const std::vector<Rational>& objective() const { return objective_; }
  void set_objective(std::vector<Rational> coefficients);
  void set_objective_coefficient(std::size_t variable, Rational value);

  /// Throws std::invalid_argument when the row width differs from
  /// variable_count().
  void add_constraint(std::vector<Rational> coefficients, Relation relation, Rational rhs);
  const std::vector<Constraint>& constraints() const { return constraints_; }

  void set_lower_bound(std::size_t variable, Rational value);
  void set_upper_bound(std::size_t variable, Rational value);
  void set_nonnegative(std::size_t variable) { set_lower_bound(variable, Rational(0)); }
  const std::vector<Bounds>& bounds() const { return bounds_; }

 private:
  Sense sense_;
  std::vector<Rational> objective_;
  std::vector<Constraint> constraints_;
  std::vector<Bounds> bounds_;
};

/// Result of solve_lp. `primal`, `duals` and `reduced_costs` are filled only
/// when status is optimal.
///
/// Duals follow the Lagrangian convention: objective = c - A^T y equals
/// `reduced_costs`, and the optimal value equals b.y plus the bound terms.
/// For a minimization, duals of >= rows are >= 0 and of <= rows are <= 0;
/// signs flip for a maximization.
struct Outcome {
  Status status = Status::infeasible;
  Rational value;
  std::vector<Rational> primal;
  std::vector<Rational> duals;
  std::vector<Rational> reduced_costs;
  /// True when the primal/dual pair was re-validated exactly after the solve.
  bool certified = false;
  std::size_t pivots = 0;
};

enum class Route {
  automatic,  ///< whichever tableau has fewer rows
  primal,     ///< tableau over the program's constraint rows
  dual,       ///< tableau over the dual program (one row per variable)
};

struct SolveOptions {
  Route route = Route::automatic;
};

/// Exact two-phase simplex with Bland's anti-cycling rule.
/// Infeasible and unbounded programs are reported through Outcome::status.
Outcome solve_lp(const LinearProgram& program, const SolveOptions& options = {});

/// Re-checks primal feasibility, dual feasibility and equality of the primal
/// and dual objective values, all in exact arithmetic.
bool verify_strong_duality(const LinearProgram& program, const Outcome& outcome);

/// Process-wide counters, used by the acceptance suite to confirm that every
/// optimal solve was certified.
struct SolveStatistics {
  std::uint64_t solves = 0;
  std::uint64_t optimal = 0;
  std::uint64_t certified = 0;
  std::uint64_t certification_failures = 0;
};

SolveStatistics solve_statistics();
void reset_solve_statistics();

// ---------------------------------------------------------------------------
// Exact linear algebra helpers.

/// Incrementally maintained row space over the rationals.
class RowSpace {
 public:
  explicit RowSpace(std::size_t dimension) : dimension_(dimension) {}

  std::size_t dimension() const { return dimension_; }
  std::size_t rank() const { return basis_.size(); }

  bool contains(std::span<const Rational> row) const;
  /// Returns true when `row` increased the rank.
  bool add(std::span<const Rational> row);

 private:
  std::vector<Rational> reduce(std::span<const Rational> row) const;

  std::size_t dimension_;
  std::vector<std::vector<Rational>> basis_;  // reduced, pivot entry 1
  std::vector<std::size_t> pivots_;
};

/// Solves rows * x = rhs when the system is consistent and has full column
/// rank `dimension`; std::nullopt otherwise.
std::optional<std::vector<Rational>> solve_unique(const std::vector<std::vector<Rational>>& rows,
                                                  const std::vector<Rational>& rhs,
                                                  std::size_t dimension);

std::vector<Rational> incidence_vector(Coalition coalition, std::size_t n);

// ---------------------------------------------------------------------------
// Balanced collections.

struct BalancednessResult {
  bool balanced = false;
  /// Balancing weights, one per required member followed by one per optional
  /// member; empty unless balanced. Required weights are strictly positive.
  std::vector<std::pair<Coalition, Rational>> weights;
  /// A required member that admits no positive weight (when not balanced).
  std::optional<Coalition> witness;
  std::size_t lp_solves = 0;
};

/// Decides whether weights lambda_S exist with sum_S lambda_S 1_S = 1_N,
/// lambda_S > 0 on `members` and lambda_S >= 0 on `optional_members`.
///
/// Solved as one exact LP: the smallest required weight t is maximized, and
/// the collection is balanced iff t > 0. Otherwise the dual solution names a
/// required member whose weight is zero in every balancing vector.
///
/// Throws std::invalid_argument for an empty collection, duplicate members,
/// or members that are empty or reach outside the n players.
BalancednessResult is_balanced_collection(std::span<const Coalition> members, std::size_t n,
                                          std::span<const Coalition> optional_members = {});

/// Exact check of a balancing certificate.
bool validate_balancing_weights(const BalancednessResult& result, std::size_t n,
                                std::size_t required_members);

}  // namespace nucleo::lp

#endif  // NUCLEO_LP_HPP
