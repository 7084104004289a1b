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

#include "nucleo/solver.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <stdexcept>
#include <string>
#include <thread>

namespace nucleo {

const char* to_string(SolutionConcept mode) {
  return mode == SolutionConcept::nucleolus ? "nucleolus" : "prenucleolus";
}

namespace {

std::vector<Rational> all_excesses(const TUGame& game, const Allocation& x) {
  const std::size_t count = game.coalition_count();
  std::vector<Rational> sums(count);
  std::vector<Rational> excesses(count);
  for (std::size_t mask = 1; mask < count; ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    sums[mask] = sums[mask & (mask - 1)] + x[low];
    excesses[mask] = game.worths()[mask] - sums[mask];
  }
  return excesses;
}

template <typename Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn&& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
}

}  // namespace

KohlbergReport kohlberg_verify(const TUGame& game, const Allocation& x, SolutionConcept mode,
                               const KohlbergOptions& options) {
  require_size(game, x);
  const ImputationReport imputation = check_imputation(game, x);
  if (!imputation.efficient) {
    throw std::invalid_argument("Kohlberg verification requires an efficient allocation (x(N) = " +
                                x.total().str() + ", v(N) = " +
                                game.worth(game.grand_coalition()).str() + ")");
  }
  if (mode == SolutionConcept::nucleolus && !imputation.individually_rational) {
    throw std::invalid_argument("nucleolus-mode Kohlberg verification requires an imputation");
  }

  const std::size_t n = game.player_count();
  const std::uint64_t grand = game.grand_coalition().mask();
  const auto excesses = all_excesses(game, x);

  std::vector<Rational> levels;
  for (std::uint64_t mask = 1; mask < grand; ++mask) levels.push_back(excesses[mask]);
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::vector<Coalition> ir_tight;
  if (mode == SolutionConcept::nucleolus) {
    for (Player p = 0; p < n; ++p) {
      if (x[p] == game.worth(Coalition::singleton(p))) ir_tight.push_back(Coalition::singleton(p));
    }
  }

  KohlbergReport report;
  report.mode = mode;
  report.levels.resize(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) {
    KohlbergLevel& level = report.levels[k];
    level.excess = levels[k];
    for (std::uint64_t mask = 1; mask < grand; ++mask) {
      if (excesses[mask] >= levels[k]) level.collection.emplace_back(mask);
    }
    for (Coalition s : ir_tight) {
      if (!std::binary_search(level.collection.begin(), level.collection.end(), s)) {
        level.optional_members.push_back(s);
      }
    }
  }
  parallel_for(report.levels.size(), options.jobs, [&](std::size_t k) {
    KohlbergLevel& level = report.levels[k];
    level.balance = lp::is_balanced_collection(level.collection, n, level.optional_members);
  });

  report.verdict = true;
  for (std::size_t k = 0; k < report.levels.size(); ++k) {
    if (!report.levels[k].balance.balanced) {
      report.verdict = false;
      report.first_failing_level = k;
      break;
    }
  }
  return report;
}

namespace {

class StagedSolver {
 public:
  StagedSolver(const TUGame& game, SolutionConcept mode)
      : game_(game), mode_(mode), n_(game.player_count()), span_(game.player_count()) {}

  SolverResult run(const SolverOptions& options) {
    SolverResult result;
    const Coalition grand = game_.grand_coalition();
    const auto ones = lp::incidence_vector(grand, n_);
    span_.add(ones);
    equality_rows_.push_back(ones);
    equality_rhs_.push_back(game_.worth(grand));

    for (std::uint64_t mask = 1; mask < grand.mask(); ++mask) active_.emplace_back(mask);
    pinned_.assign(n_, false);

    std::optional<Rational> previous_epsilon;
    while (span_.rank() < n_) {
      if (active_.empty()) throw std::logic_error("no free coalition left before reaching full rank");
      StageState stage = run_stage(result.stages.size() + 1);
      if (previous_epsilon && !(stage.epsilon < *previous_epsilon)) {
        throw std::logic_error("stage values failed to decrease");
      }
      if (!result.stages.empty() && stage.rank <= result.stages.back().rank) {
        throw std::logic_error("stage did not increase the rank of the fixed system");
      }
      previous_epsilon = stage.epsilon;
      result.stages.push_back(std::move(stage));
    }

    auto x = lp::solve_unique(equality_rows_, equality_rhs_, n_);
    if (!x) throw std::logic_error("fixed equality system has no unique solution");
    result.allocation = Allocation(std::move(*x));
    result.certificate = kohlberg_verify(game_, result.allocation, mode_, {options.jobs});
    result.verified = result.certificate.verdict;
    return result;
  }

 private:
  // Base program over x (and optionally epsilon as the last variable).
  lp::LinearProgram base_program(bool with_epsilon, const Rational& epsilon) const {
    const std::size_t vars = n_ + (with_epsilon ? 1 : 0);
    lp::LinearProgram program(vars);
    auto widen = [&](std::vector<Rational> row) {
      row.resize(vars);
      return row;
    };
    for (std::size_t r = 0; r < equality_rows_.size(); ++r) {
      program.add_constraint(widen(equality_rows_[r]), lp::Relation::equal, equality_rhs_[r]);
    }
    for (Coalition s : active_) {
      auto row = widen(lp::incidence_vector(s, n_));
      if (with_epsilon) {
        row[n_] = Rational(1);
        program.add_constraint(std::move(row), lp::Relation::greater_equal, game_.worth(s));
      } else {
        program.add_constraint(std::move(row), lp::Relation::greater_equal, game_.worth(s) - epsilon);
      }
    }
    if (mode_ == SolutionConcept::nucleolus) {
      for (Player p = 0; p < n_; ++p) {
        if (!pinned_[p]) program.set_lower_bound(p, game_.worth(Coalition::singleton(p)));
      }
    }
    return program;
  }

  StageState run_stage(std::size_t index) {
    StageState stage;
    stage.index = index;

    lp::LinearProgram program = base_program(true, Rational(0));
    program.set_objective_coefficient(n_, Rational(1));
    lp::Outcome outcome = lp::solve_lp(program);
    ++stage.lp_solves;
    if (outcome.status != lp::Status::optimal) {
      throw std::logic_error(std::string("stage LP is ") + lp::to_string(outcome.status));
    }
    stage.epsilon = outcome.primal[n_];
    const Allocation point(std::vector<Rational>(outcome.primal.begin(), outcome.primal.begin() + static_cast<std::ptrdiff_t>(n_)));

    // Candidates: constraints tight at the stage optimum.
    struct Candidate {
      bool is_coalition;
      Coalition coalition;
      Player player;
      bool slack_somewhere = false;
    };
    std::vector<Candidate> candidates;
    for (Coalition s : active_) {
      if (game_.worth(s) - point.sum(s) == stage.epsilon) candidates.push_back({true, s, 0});
    }
    if (mode_ == SolutionConcept::nucleolus) {
      for (Player p = 0; p < n_; ++p) {
        if (!pinned_[p] && point[p] == game_.worth(Coalition::singleton(p))) {
          candidates.push_back({false, Coalition::singleton(p), p});
        }
      }
    }
    auto slack = [&](const Candidate& c, const Allocation& y) {
      return c.is_coalition ? y.sum(c.coalition) - game_.worth(c.coalition) + stage.epsilon
                            : y[c.player] - game_.worth(Coalition::singleton(c.player));
    };

    // A candidate is fixed iff its slack cannot be made positive on the
    // optimal face.
    const lp::LinearProgram face = base_program(false, stage.epsilon);
    for (auto& candidate : candidates) {
      if (candidate.slack_somewhere) continue;
      lp::LinearProgram probe = face;
      probe.set_sense(lp::Sense::maximize);
      if (candidate.is_coalition) {
        for (Player p : candidate.coalition.players()) probe.set_objective_coefficient(p, Rational(1));
      } else {
        probe.set_objective_coefficient(candidate.player, Rational(1));
      }
      lp::Outcome max_slack = lp::solve_lp(probe);
      ++stage.lp_solves;
      if (max_slack.status == lp::Status::infeasible) {
        throw std::logic_error("optimal face of a stage LP is empty");
      }
      if (max_slack.status == lp::Status::unbounded) {
        candidate.slack_somewhere = true;
        continue;
      }
      const Allocation y(max_slack.primal);
      for (auto& other : candidates) {
        if (!other.slack_somewhere && slack(other, y).sign() > 0) other.slack_somewhere = true;
      }
    }

    for (const auto& candidate : candidates) {
      if (candidate.slack_somewhere) continue;
      if (candidate.is_coalition) {
        stage.fixed.push_back(candidate.coalition);
        auto row = lp::incidence_vector(candidate.coalition, n_);
        span_.add(row);
        equality_rows_.push_back(std::move(row));
        equality_rhs_.push_back(game_.worth(candidate.coalition) - stage.epsilon);
      } else {
        stage.pinned.push_back(candidate.player);
        pinned_[candidate.player] = true;
        auto row = lp::incidence_vector(candidate.coalition, n_);
        span_.add(row);
        equality_rows_.push_back(std::move(row));
        equality_rhs_.push_back(game_.worth(candidate.coalition));
      }
    }

    // Coalitions now fixed or determined by the fixed system leave the pool.
    std::erase_if(active_, [&](Coalition s) {
      return std::find(stage.fixed.begin(), stage.fixed.end(), s) != stage.fixed.end() ||
             span_.contains(lp::incidence_vector(s, n_));
    });
    stage.rank = span_.rank();
    return stage;
  }

  const TUGame& game_;
  SolutionConcept mode_;
  std::size_t n_;
  lp::RowSpace span_;
  std::vector<std::vector<Rational>> equality_rows_;
  std::vector<Rational> equality_rhs_;
  std::vector<Coalition> active_;
  std::vector<bool> pinned_;
};

}  // namespace

SolverResult solve(const TUGame& game, SolutionConcept mode, const SolverOptions& options) {
  const std::size_t n = game.player_count();
  if (n == 0) throw std::invalid_argument("cannot solve a game without players");
  if (mode == SolutionConcept::nucleolus) {
    Rational singles;
    for (Player p = 0; p < n; ++p) singles += game.worth(Coalition::singleton(p));
    if (singles > game.worth(game.grand_coalition())) {
      throw std::domain_error("the imputation set is empty: sum of v({i}) = " + singles.str() +
                              " exceeds v(N) = " + game.worth(game.grand_coalition()).str());
    }
  }
  StagedSolver solver(game, mode);
  return solver.run(options);
}

Allocation prenucleolus(const TUGame& game) {
  return solve(game, SolutionConcept::prenucleolus).allocation;
}

Allocation nucleolus(const TUGame& game) {
  return solve(game, SolutionConcept::nucleolus).allocation;
}

namespace {

void check_pair(const TUGame& game, Player i, Player j) {
  if (i == j) throw std::invalid_argument("surplus requires two distinct players");
  if (i >= game.player_count() || j >= game.player_count()) {
    throw std::invalid_argument("player index out of range");
  }
}

}  // namespace

Rational max_surplus(const TUGame& game, const Allocation& x, Player i, Player j) {
  require_size(game, x);
  check_pair(game, i, j);
  std::optional<Rational> best;
  for (std::uint64_t mask = 0; mask < game.coalition_count(); ++mask) {
    const Coalition s(mask);
    if (!s.contains(i) || s.contains(j)) continue;
    Rational e = excess(game, x, s);
    if (!best || e > *best) best = std::move(e);
  }
  return *best;
}

SurplusMatrix::SurplusMatrix(const TUGame& game, const Allocation& x)
    : n_(game.player_count()), values_(n_ * n_) {
  require_size(game, x);
  const auto excesses = all_excesses(game, x);
  std::vector<bool> seen(n_ * n_, false);
  for (std::uint64_t mask = 1; mask < game.coalition_count(); ++mask) {
    const Coalition s(mask);
    for (Player i : s.players()) {
      for (Player j = 0; j < n_; ++j) {
        if (s.contains(j)) continue;
        const std::size_t k = i * n_ + j;
        if (!seen[k] || excesses[mask] > values_[k]) {
          values_[k] = excesses[mask];
          seen[k] = true;
        }
      }
    }
  }
}

const Rational& SurplusMatrix::at(Player i, Player j) const {
  if (i == j) throw std::invalid_argument("surplus matrix has no diagonal");
  return values_.at(i * n_ + j);
}

KernelReport kernel_checks(const TUGame& game, const Allocation& x) {
  require_size(game, x);
  KernelReport report;
  report.imputation = check_imputation(game, x).is_imputation();
  const SurplusMatrix s(game, x);
  const std::size_t n = game.player_count();
  for (Player i = 0; i < n; ++i) {
    for (Player j = 0; j < n; ++j) {
      if (i == j || !(s.at(i, j) > s.at(j, i))) continue;
      report.unbalanced_pairs.emplace_back(i, j);
      if (x[j] > game.worth(Coalition::singleton(j))) report.kernel_violations.emplace_back(i, j);
    }
  }
  report.prekernel = report.unbalanced_pairs.empty();
  report.kernel = report.imputation && report.kernel_violations.empty();
  return report;
}

}  // namespace nucleo
