#pragma once

#include <limits>
#include <vector>

#include "bp/belief.hpp"

namespace bp {

enum class Relation { le, eq, ge };

enum class LpStatus { optimal, infeasible, unbounded, numerical_failure };

// Dense LP in the form
//   max / min  objective . x
//   subject to row_i . x  (<= | = | >=)  rhs_i
//              lower <= x <= upper       (defaults 0 and +inf)
struct LinearProgram {
  explicit LinearProgram(int num_vars, bool maximize_ = true)
      : maximize(maximize_),
        objective(Vec::Zero(num_vars)),
        lower(Vec::Zero(num_vars)),
        upper(Vec::Constant(num_vars, std::numeric_limits<double>::infinity())) {}

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_constraints() const { return static_cast<int>(rows.size()); }
  void add_constraint(Vec row, Relation rel, double rhs_value);

  bool maximize;
  Vec objective;
  std::vector<Vec> rows;
  std::vector<Relation> rels;
  std::vector<double> rhs;
  Vec lower, upper;
};

// Solution with one dual multiplier per constraint. Sign convention for a
// maximization: duals of <= rows are >= 0, duals of >= rows are <= 0,
// equality duals are free, and objective == rhs . duals at optimality.
// Minimization flips all dual signs.
struct LpSolution {
  LpStatus status = LpStatus::numerical_failure;
  Vec x;
  double objective = 0.0;
  Vec duals;
};

// Two-phase dense simplex. Deterministic: identical programs produce
// identical solutions (Dantzig pricing with smallest-index tie-breaking,
// falling back to Bland's rule after a run of degenerate pivots to rule
// out cycling). Never returns a silently infeasible "optimal" point: the
// result is re-checked against every constraint before it is reported.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace bp
