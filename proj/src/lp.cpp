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

#include "nucleo/lp.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace nucleo::lp {

const char* to_string(Status status) {
  switch (status) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
  }
  return "unknown";
}

LinearProgram::LinearProgram(std::size_t variables, Sense sense)
    : sense_(sense), objective_(variables), bounds_(variables) {}

void LinearProgram::set_objective(std::vector<Rational> coefficients) {
  if (coefficients.size() != objective_.size()) {
    throw std::invalid_argument("objective width " + std::to_string(coefficients.size()) +
                                " != variable count " + std::to_string(objective_.size()));
  }
  objective_ = std::move(coefficients);
}

void LinearProgram::set_objective_coefficient(std::size_t variable, Rational value) {
  objective_.at(variable) = std::move(value);
}

void LinearProgram::add_constraint(std::vector<Rational> coefficients, Relation relation,
                                   Rational rhs) {
  if (coefficients.size() != objective_.size()) {
    throw std::invalid_argument("constraint width " + std::to_string(coefficients.size()) +
                                " != variable count " + std::to_string(objective_.size()));
  }
  constraints_.push_back({std::move(coefficients), relation, std::move(rhs)});
}

void LinearProgram::set_lower_bound(std::size_t variable, Rational value) {
  bounds_.at(variable).lower = std::move(value);
}

void LinearProgram::set_upper_bound(std::size_t variable, Rational value) {
  bounds_.at(variable).upper = std::move(value);
}

namespace {

std::atomic<std::uint64_t> g_solves{0};
std::atomic<std::uint64_t> g_optimal{0};
std::atomic<std::uint64_t> g_certified{0};
std::atomic<std::uint64_t> g_failures{0};

// min cost.z  s.t.  matrix z = rhs,  z >= 0
struct StandardForm {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<Rational>> matrix;
  std::vector<Rational> rhs;
  std::vector<Rational> cost;
};

struct StandardResult {
  Status status = Status::infeasible;
  std::vector<Rational> z;
  std::vector<Rational> multipliers;  // pi with pi^T A_B = cost_B
  std::size_t pivots = 0;
};

class Tableau {
 public:
  explicit Tableau(const StandardForm& form)
      : rows_(form.rows), cols_(form.cols), width_(form.cols + form.rows),
        cells_(form.rows, std::vector<Rational>(width_)), rhs_(form.rows),
        sign_(form.rows, 1), basis_(form.rows), reduced_(width_) {
    for (std::size_t i = 0; i < rows_; ++i) {
      sign_[i] = form.rhs[i].sign() < 0 ? -1 : 1;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!form.matrix[i][j].is_zero()) {
          cells_[i][j] = sign_[i] < 0 ? -form.matrix[i][j] : form.matrix[i][j];
        }
      }
      rhs_[i] = sign_[i] < 0 ? -form.rhs[i] : form.rhs[i];
      cells_[i][cols_ + i] = Rational(1);
      basis_[i] = cols_ + i;
    }
  }

  StandardResult solve(const std::vector<Rational>& cost) {
    StandardResult result;

    // Phase 1: minimize the sum of artificials.
    for (std::size_t j = 0; j < cols_; ++j) {
      Rational sum;
      for (std::size_t i = 0; i < rows_; ++i) sum -= cells_[i][j];
      reduced_[j] = sum;
    }
    if (run() == Status::unbounded) {
      throw std::logic_error("simplex phase 1 reported unbounded");
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] >= cols_ && !rhs_[i].is_zero()) {
        result.status = Status::infeasible;
        result.pivots = pivots_;
        return result;
      }
    }
    // Drive zero-level artificials out of the basis where possible. Rows that
    // keep an artificial are redundant and never leave again.
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < cols_) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!cells_[i][j].is_zero()) {
          pivot(i, j);
          break;
        }
      }
    }

    // Phase 2.
    for (std::size_t j = 0; j < width_; ++j) {
      Rational r = j < cols_ ? cost[j] : Rational(0);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (basis_[i] < cols_ && !cells_[i][j].is_zero() && !cost[basis_[i]].is_zero()) {
          r -= cost[basis_[i]] * cells_[i][j];
        }
      }
      reduced_[j] = std::move(r);
    }
    result.status = run();
    result.pivots = pivots_;
    if (result.status != Status::optimal) return result;

    result.z.assign(cols_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < cols_) result.z[basis_[i]] = rhs_[i];
    }
    result.multipliers.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      const Rational& r = reduced_[cols_ + i];
      result.multipliers[i] = sign_[i] < 0 ? r : -r;
    }
    return result;
  }

 private:
  // Bland's rule over the structural columns.
  Status run() {
    while (true) {
      std::size_t entering = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (reduced_[j].sign() < 0) {
          entering = j;
          break;
        }
      }
      if (entering == cols_) return Status::optimal;

      std::size_t leaving = rows_;
      Rational best;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (cells_[i][entering].sign() <= 0) continue;
        Rational ratio = rhs_[i] / cells_[i][entering];
        if (leaving == rows_ || ratio < best ||
            (ratio == best && basis_[i] < basis_[leaving])) {
          leaving = i;
          best = std::move(ratio);
        }
      }
      if (leaving == rows_) return Status::unbounded;
      pivot(leaving, entering);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    ++pivots_;
    std::vector<Rational>& prow = cells_[row];
    const Rational pivot_value = prow[col];
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < width_; ++j) {
      if (prow[j].is_zero()) continue;
      prow[j] /= pivot_value;
      support.push_back(j);
    }
    rhs_[row] /= pivot_value;

    auto eliminate = [&](std::vector<Rational>& target, Rational* target_rhs) {
      if (target[col].is_zero()) return;
      const Rational factor = target[col];
      for (std::size_t j : support) target[j] -= factor * prow[j];
      if (target_rhs != nullptr) *target_rhs -= factor * rhs_[row];
    };
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i != row) eliminate(cells_[i], &rhs_[i]);
    }
    eliminate(reduced_, nullptr);
    basis_[row] = col;
  }

  std::size_t rows_;
  std::size_t cols_;
  std::size_t width_;
  std::vector<std::vector<Rational>> cells_;
  std::vector<Rational> rhs_;
  std::vector<int> sign_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> reduced_;
  std::size_t pivots_ = 0;
};

StandardResult solve_standard(const StandardForm& form) {
  Tableau tableau(form);
  return tableau.solve(form.cost);
}

// Minimization over variables that are either free or nonnegative, with
// >= and = rows only.
struct CanonicalProgram {
  enum class VarKind { free, shifted, reflected };
  struct Var {
    VarKind kind = VarKind::free;
    Rational offset;  // x = offset + x' (shifted) or offset - x' (reflected)
  };
  struct Row {
    std::vector<Rational> coefficients;
    Rational rhs;
    bool equality = false;
    // Index of the originating constraint, or npos for a bound row.
    std::size_t origin = static_cast<std::size_t>(-1);
    int sign = 1;
  };

  std::vector<Var> vars;
  std::vector<Rational> cost;
  std::vector<Row> rows;
};

CanonicalProgram canonicalize(const LinearProgram& program, bool zero_objective) {
  const std::size_t n = program.variable_count();
  const int sense_sign = program.sense() == Sense::minimize ? 1 : -1;
  CanonicalProgram out;
  out.vars.resize(n);
  out.cost.resize(n);
  std::vector<CanonicalProgram::Row> bound_rows;

  for (std::size_t j = 0; j < n; ++j) {
    const Bounds& b = program.bounds()[j];
    Rational c = zero_objective ? Rational(0) : program.objective()[j];
    if (sense_sign < 0) c = -c;
    auto& var = out.vars[j];
    if (b.lower) {
      var.kind = CanonicalProgram::VarKind::shifted;
      var.offset = *b.lower;
      out.cost[j] = c;
      if (b.upper) {
        CanonicalProgram::Row row;
        row.coefficients.assign(n, Rational(0));
        row.coefficients[j] = Rational(-1);
        row.rhs = *b.lower - *b.upper;
        bound_rows.push_back(std::move(row));
      }
    } else if (b.upper) {
      var.kind = CanonicalProgram::VarKind::reflected;
      var.offset = *b.upper;
      out.cost[j] = -c;
    } else {
      out.cost[j] = c;
    }
  }

  for (std::size_t k = 0; k < program.constraint_count(); ++k) {
    const Constraint& con = program.constraints()[k];
    CanonicalProgram::Row row;
    row.origin = k;
    row.sign = con.relation == Relation::less_equal ? -1 : 1;
    row.equality = con.relation == Relation::equal;
    row.coefficients.resize(n);
    Rational rhs = con.rhs;
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& a = con.coefficients[j];
      if (a.is_zero()) continue;
      const auto& var = out.vars[j];
      switch (var.kind) {
        case CanonicalProgram::VarKind::free: row.coefficients[j] = a; break;
        case CanonicalProgram::VarKind::shifted:
          row.coefficients[j] = a;
          rhs -= a * var.offset;
          break;
        case CanonicalProgram::VarKind::reflected:
          row.coefficients[j] = -a;
          rhs -= a * var.offset;
          break;
      }
    }
    if (row.sign < 0) {
      for (auto& a : row.coefficients) a = -a;
      rhs = -rhs;
    }
    row.rhs = std::move(rhs);
    out.rows.push_back(std::move(row));
  }
  for (auto& row : bound_rows) out.rows.push_back(std::move(row));
  return out;
}

struct CanonicalSolution {
  Status status = Status::infeasible;
  std::vector<Rational> x;     // canonical variables
  std::vector<Rational> duals; // per canonical row, min-view
  std::size_t pivots = 0;
};

CanonicalSolution solve_primal_route(const CanonicalProgram& cp) {
  const std::size_t n = cp.vars.size();
  const std::size_t m = cp.rows.size();
  std::vector<std::size_t> plus_col(n), minus_col(n, static_cast<std::size_t>(-1));
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    plus_col[j] = cols++;
    if (cp.vars[j].kind == CanonicalProgram::VarKind::free) minus_col[j] = cols++;
  }
  std::vector<std::size_t> surplus_col(m, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < m; ++i) {
    if (!cp.rows[i].equality) surplus_col[i] = cols++;
  }

  StandardForm form;
  form.rows = m;
  form.cols = cols;
  form.matrix.assign(m, std::vector<Rational>(cols));
  form.rhs.resize(m);
  form.cost.assign(cols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    form.cost[plus_col[j]] = cp.cost[j];
    if (minus_col[j] != static_cast<std::size_t>(-1)) form.cost[minus_col[j]] = -cp.cost[j];
  }
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = cp.rows[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (row.coefficients[j].is_zero()) continue;
      form.matrix[i][plus_col[j]] = row.coefficients[j];
      if (minus_col[j] != static_cast<std::size_t>(-1)) {
        form.matrix[i][minus_col[j]] = -row.coefficients[j];
      }
    }
    if (surplus_col[i] != static_cast<std::size_t>(-1)) form.matrix[i][surplus_col[i]] = Rational(-1);
    form.rhs[i] = row.rhs;
  }

  StandardResult std_result = solve_standard(form);
  CanonicalSolution out;
  out.status = std_result.status;
  out.pivots = std_result.pivots;
  if (out.status != Status::optimal) return out;
  out.x.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.x[j] = std_result.z[plus_col[j]];
    if (minus_col[j] != static_cast<std::size_t>(-1)) out.x[j] -= std_result.z[minus_col[j]];
  }
  out.duals = std::move(std_result.multipliers);
  return out;
}

// Simplex on the dual program: max b.y  s.t.  A^T y (=|<=) c,  y_i >= 0 on
// inequality rows. The primal point is read from the simplex multipliers.
CanonicalSolution solve_dual_route(const CanonicalProgram& cp, bool zero_objective) {
  const std::size_t n = cp.vars.size();
  const std::size_t m = cp.rows.size();
  std::vector<std::size_t> plus_col(m), minus_col(m, static_cast<std::size_t>(-1));
  std::size_t cols = 0;
  for (std::size_t i = 0; i < m; ++i) {
    plus_col[i] = cols++;
    if (cp.rows[i].equality) minus_col[i] = cols++;
  }
  std::vector<std::size_t> slack_col(n, static_cast<std::size_t>(-1));
  for (std::size_t j = 0; j < n; ++j) {
    if (cp.vars[j].kind != CanonicalProgram::VarKind::free) slack_col[j] = cols++;
  }

  StandardForm form;
  form.rows = n;
  form.cols = cols;
  form.matrix.assign(n, std::vector<Rational>(cols));
  form.rhs.resize(n);
  form.cost.assign(cols, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = cp.rows[i];
    form.cost[plus_col[i]] = -row.rhs;
    if (minus_col[i] != static_cast<std::size_t>(-1)) form.cost[minus_col[i]] = row.rhs;
    for (std::size_t j = 0; j < n; ++j) {
      if (row.coefficients[j].is_zero()) continue;
      form.matrix[j][plus_col[i]] = row.coefficients[j];
      if (minus_col[i] != static_cast<std::size_t>(-1)) {
        form.matrix[j][minus_col[i]] = -row.coefficients[j];
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    form.rhs[j] = zero_objective ? Rational(0) : cp.cost[j];
    if (slack_col[j] != static_cast<std::size_t>(-1)) form.matrix[j][slack_col[j]] = Rational(1);
  }

  StandardResult std_result = solve_standard(form);
  CanonicalSolution out;
  out.pivots = std_result.pivots;
  if (std_result.status == Status::unbounded) {
    out.status = Status::infeasible;
    return out;
  }
  if (std_result.status == Status::infeasible) {
    // Dual infeasible: the primal is unbounded if it is feasible at all.
    if (zero_objective) throw std::logic_error("zero-objective dual cannot be infeasible");
    CanonicalSolution feasibility = solve_dual_route(cp, true);
    out.pivots += feasibility.pivots;
    out.status = feasibility.status == Status::optimal ? Status::unbounded : Status::infeasible;
    return out;
  }
  out.status = Status::optimal;
  out.x.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.x[j] = -std_result.multipliers[j];
  out.duals.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    out.duals[i] = std_result.z[plus_col[i]];
    if (minus_col[i] != static_cast<std::size_t>(-1)) out.duals[i] -= std_result.z[minus_col[i]];
  }
  return out;
}

}  // namespace

Outcome solve_lp(const LinearProgram& program, const SolveOptions& options) {
  ++g_solves;
  const std::size_t n = program.variable_count();
  CanonicalProgram cp = canonicalize(program, false);

  Route route = options.route;
  if (route == Route::automatic) {
    route = cp.vars.size() < cp.rows.size() ? Route::dual : Route::primal;
  }
  CanonicalSolution cs = route == Route::dual ? solve_dual_route(cp, false) : solve_primal_route(cp);

  Outcome outcome;
  outcome.status = cs.status;
  outcome.pivots = cs.pivots;
  if (cs.status != Status::optimal) return outcome;
  ++g_optimal;

  outcome.primal.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& var = cp.vars[j];
    switch (var.kind) {
      case CanonicalProgram::VarKind::free: outcome.primal[j] = cs.x[j]; break;
      case CanonicalProgram::VarKind::shifted: outcome.primal[j] = var.offset + cs.x[j]; break;
      case CanonicalProgram::VarKind::reflected: outcome.primal[j] = var.offset - cs.x[j]; break;
    }
  }

  const int sense_sign = program.sense() == Sense::minimize ? 1 : -1;
  outcome.duals.assign(program.constraint_count(), Rational(0));
  for (std::size_t i = 0; i < cp.rows.size(); ++i) {
    const auto& row = cp.rows[i];
    if (row.origin == static_cast<std::size_t>(-1)) continue;
    Rational y = cs.duals[i];
    if (row.sign * sense_sign < 0) y = -y;
    outcome.duals[row.origin] = std::move(y);
  }

  outcome.reduced_costs = program.objective();
  for (std::size_t k = 0; k < program.constraint_count(); ++k) {
    const Rational& y = outcome.duals[k];
    if (y.is_zero()) continue;
    const auto& a = program.constraints()[k].coefficients;
    for (std::size_t j = 0; j < n; ++j) {
      if (!a[j].is_zero()) outcome.reduced_costs[j] -= y * a[j];
    }
  }

  Rational value;
  for (std::size_t j = 0; j < n; ++j) {
    if (!program.objective()[j].is_zero()) value += program.objective()[j] * outcome.primal[j];
  }
  outcome.value = std::move(value);

  outcome.certified = verify_strong_duality(program, outcome);
  if (outcome.certified) {
    ++g_certified;
  } else {
    ++g_failures;
  }
  return outcome;
}

bool verify_strong_duality(const LinearProgram& program, const Outcome& outcome) {
  if (outcome.status != Status::optimal) return false;
  const std::size_t n = program.variable_count();
  if (outcome.primal.size() != n || outcome.duals.size() != program.constraint_count() ||
      outcome.reduced_costs.size() != n) {
    return false;
  }
  const int sense_sign = program.sense() == Sense::minimize ? 1 : -1;

  Rational primal_value;
  for (std::size_t j = 0; j < n; ++j) primal_value += program.objective()[j] * outcome.primal[j];
  if (primal_value != outcome.value) return false;

  for (std::size_t j = 0; j < n; ++j) {
    const Bounds& b = program.bounds()[j];
    if (b.lower && outcome.primal[j] < *b.lower) return false;
    if (b.upper && outcome.primal[j] > *b.upper) return false;
  }

  // Work in the minimization view: c_min = sense * c, y_min = sense * y.
  std::vector<Rational> reduced(n);
  for (std::size_t j = 0; j < n; ++j) {
    reduced[j] = sense_sign > 0 ? program.objective()[j] : -program.objective()[j];
  }
  Rational dual_value;
  for (std::size_t k = 0; k < program.constraint_count(); ++k) {
    const Constraint& con = program.constraints()[k];
    Rational activity;
    for (std::size_t j = 0; j < n; ++j) {
      if (!con.coefficients[j].is_zero()) activity += con.coefficients[j] * outcome.primal[j];
    }
    switch (con.relation) {
      case Relation::less_equal:
        if (activity > con.rhs) return false;
        break;
      case Relation::greater_equal:
        if (activity < con.rhs) return false;
        break;
      case Relation::equal:
        if (activity != con.rhs) return false;
        break;
    }
    Rational y = sense_sign > 0 ? outcome.duals[k] : -outcome.duals[k];
    if (con.relation == Relation::greater_equal && y.sign() < 0) return false;
    if (con.relation == Relation::less_equal && y.sign() > 0) return false;
    if (y.is_zero()) continue;
    dual_value += y * con.rhs;
    for (std::size_t j = 0; j < n; ++j) {
      if (!con.coefficients[j].is_zero()) reduced[j] -= y * con.coefficients[j];
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    Rational expected = sense_sign > 0 ? outcome.reduced_costs[j] : -outcome.reduced_costs[j];
    if (expected != reduced[j]) return false;
    const Bounds& b = program.bounds()[j];
    if (reduced[j].sign() > 0) {
      if (!b.lower) return false;
      dual_value += reduced[j] * *b.lower;
    } else if (reduced[j].sign() < 0) {
      if (!b.upper) return false;
      dual_value += reduced[j] * *b.upper;
    }
  }
  Rational min_value = sense_sign > 0 ? outcome.value : -outcome.value;
  return dual_value == min_value;
}

SolveStatistics solve_statistics() {
  return {g_solves.load(), g_optimal.load(), g_certified.load(), g_failures.load()};
}

void reset_solve_statistics() {
  g_solves = 0;
  g_optimal = 0;
  g_certified = 0;
  g_failures = 0;
}

// ---------------------------------------------------------------------------

std::vector<Rational> RowSpace::reduce(std::span<const Rational> row) const {
  if (row.size() != dimension_) throw std::invalid_argument("row width mismatch");
  std::vector<Rational> r(row.begin(), row.end());
  for (std::size_t b = 0; b < basis_.size(); ++b) {
    const Rational factor = r[pivots_[b]];
    if (factor.is_zero()) continue;
    for (std::size_t j = 0; j < dimension_; ++j) {
      if (!basis_[b][j].is_zero()) r[j] -= factor * basis_[b][j];
    }
  }
  return r;
}

bool RowSpace::contains(std::span<const Rational> row) const {
  auto r = reduce(row);
  return std::all_of(r.begin(), r.end(), [](const Rational& v) { return v.is_zero(); });
}

bool RowSpace::add(std::span<const Rational> row) {
  auto r = reduce(row);
  auto it = std::find_if(r.begin(), r.end(), [](const Rational& v) { return !v.is_zero(); });
  if (it == r.end()) return false;
  const std::size_t pivot = static_cast<std::size_t>(it - r.begin());
  const Rational scale = r[pivot];
  for (auto& v : r) {
    if (!v.is_zero()) v /= scale;
  }
  // keep the basis fully reduced so reduce() is a single sweep
  for (auto& b : basis_) {
    const Rational factor = b[pivot];
    if (factor.is_zero()) continue;
    for (std::size_t j = 0; j < dimension_; ++j) {
      if (!r[j].is_zero()) b[j] -= factor * r[j];
    }
  }
  basis_.push_back(std::move(r));
  pivots_.push_back(pivot);
  return true;
}

std::optional<std::vector<Rational>> solve_unique(const std::vector<std::vector<Rational>>& rows,
                                                  const std::vector<Rational>& rhs,
                                                  std::size_t dimension) {
  if (rows.size() != rhs.size()) throw std::invalid_argument("row/rhs count mismatch");
  std::vector<std::vector<Rational>> aug;
  aug.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dimension) throw std::invalid_argument("row width mismatch");
    auto r = rows[i];
    r.push_back(rhs[i]);
    aug.push_back(std::move(r));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < dimension && rank < aug.size(); ++col) {
    std::size_t pick = rank;
    while (pick < aug.size() && aug[pick][col].is_zero()) ++pick;
    if (pick == aug.size()) continue;
    std::swap(aug[rank], aug[pick]);
    const Rational pivot = aug[rank][col];
    for (auto& v : aug[rank]) {
      if (!v.is_zero()) v /= pivot;
    }
    for (std::size_t i = 0; i < aug.size(); ++i) {
      if (i == rank || aug[i][col].is_zero()) continue;
      const Rational factor = aug[i][col];
      for (std::size_t j = col; j <= dimension; ++j) {
        if (!aug[rank][j].is_zero()) aug[i][j] -= factor * aug[rank][j];
      }
    }
    ++rank;
  }
  if (rank < dimension) return std::nullopt;
  for (std::size_t i = rank; i < aug.size(); ++i) {
    if (!aug[i][dimension].is_zero()) return std::nullopt;
  }
  std::vector<Rational> x(dimension);
  for (std::size_t i = 0; i < dimension; ++i) x[i] = aug[i][dimension];
  return x;
}

std::vector<Rational> incidence_vector(Coalition coalition, std::size_t n) {
  std::vector<Rational> v(n);
  for (Player p : coalition.players()) {
    if (p >= n) throw std::invalid_argument("coalition " + coalition.str() + " outside " + std::to_string(n) + " players");
    v[p] = Rational(1);
  }
  return v;
}

// ---------------------------------------------------------------------------

BalancednessResult is_balanced_collection(std::span<const Coalition> members, std::size_t n,
                                          std::span<const Coalition> optional_members) {
  if (members.empty()) throw std::invalid_argument("balancedness of an empty collection");
  const Coalition grand = Coalition::grand(n);
  std::unordered_set<std::uint64_t> seen;
  auto check = [&](Coalition s) {
    if (s.empty() || !s.is_subset_of(grand)) {
      throw std::invalid_argument("collection member " + s.str() + " is not a nonempty coalition of " +
                                  std::to_string(n) + " players");
    }
    if (!seen.insert(s.mask()).second) {
      throw std::invalid_argument("duplicate collection member " + s.str());
    }
  };
  for (Coalition s : members) check(s);
  for (Coalition s : optional_members) check(s);

  // maximize t  s.t.  t * c + sum_S w_S 1_S + sum_O mu_O 1_O = 1_N,  t, w, mu >= 0
  // where c_p counts the required members containing p; lambda_S = t + w_S.
  const std::size_t k = members.size();
  const std::size_t extra = optional_members.size();
  LinearProgram program(1 + k + extra, Sense::maximize);
  program.set_objective_coefficient(0, Rational(1));
  for (std::size_t v = 0; v < 1 + k + extra; ++v) program.set_nonnegative(v);
  for (Player p = 0; p < n; ++p) {
    std::vector<Rational> row(1 + k + extra);
    long count = 0;
    for (std::size_t s = 0; s < k; ++s) {
      if (members[s].contains(p)) {
        row[1 + s] = Rational(1);
        ++count;
      }
    }
    for (std::size_t o = 0; o < extra; ++o) {
      if (optional_members[o].contains(p)) row[1 + k + o] = Rational(1);
    }
    row[0] = Rational(count);
    program.add_constraint(std::move(row), Relation::equal, Rational(1));
  }

  BalancednessResult result;
  const Outcome outcome = solve_lp(program);
  result.lp_solves = 1;
  if (outcome.status != Status::optimal) {
    result.witness = members.front();
    return result;
  }
  if (outcome.value.sign() > 0) {
    result.balanced = true;
    result.weights.reserve(k + extra);
    for (std::size_t s = 0; s < k; ++s) {
      result.weights.emplace_back(members[s], outcome.primal[0] + outcome.primal[1 + s]);
    }
    for (std::size_t o = 0; o < extra; ++o) {
      result.weights.emplace_back(optional_members[o], outcome.primal[1 + k + o]);
    }
    return result;
  }
  // At t = 0 the duals y satisfy y(N) = 0 and y(S) >= 0 on the collection,
  // with y(S) > 0 for some required S; any such S has weight 0 in every
  // balancing vector.
  for (std::size_t s = 0; s < k; ++s) {
    Rational ys;
    for (Player p : members[s].players()) ys += outcome.duals[p];
    if (ys.sign() > 0) {
      result.witness = members[s];
      return result;
    }
  }
  throw std::logic_error("unbalanced collection without a dual witness");
}

bool validate_balancing_weights(const BalancednessResult& result, std::size_t n,
                                std::size_t required_members) {
  if (!result.balanced || result.weights.size() < required_members) return false;
  std::vector<Rational> cover(n);
  for (std::size_t s = 0; s < result.weights.size(); ++s) {
    const auto& [coalition, weight] = result.weights[s];
    if (s < required_members ? weight.sign() <= 0 : weight.sign() < 0) return false;
    for (Player p : coalition.players()) {
      if (p >= n) return false;
      cover[p] += weight;
    }
  }
  return std::all_of(cover.begin(), cover.end(), [](const Rational& c) { return c == Rational(1); });
}

}  // namespace nucleo::lp
