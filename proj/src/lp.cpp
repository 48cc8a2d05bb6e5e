#include "bp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bp/errors.hpp"

namespace bp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;     // minimum magnitude of a pivot element
constexpr double kReducedTol = 1e-9;   // optimality threshold on reduced costs
constexpr double kPhase1Tol = 1e-7;    // residual infeasibility treated as zero
constexpr double kCheckTol = 1e-8;     // final primal feasibility audit
constexpr int kDegenerateRun = 12;     // degenerate pivots before Bland kicks in

// The tableau works in extended precision: robust-obedience programs carry
// nearly dependent rows from ball vertices a hair apart, and the resulting
// degenerate pivoting amplifies double-precision roundoff into infeasible
// bases. Inputs and outputs remain double.
using LD = long double;
using Tableau = Eigen::Matrix<LD, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatL = Eigen::Matrix<LD, Eigen::Dynamic, Eigen::Dynamic>;
using VecL = Eigen::Matrix<LD, Eigen::Dynamic, 1>;

// One internal (nonnegative) variable and its mapping back to an original
// variable: x_orig = sum over its entries of sign * z + offset.
struct VarMap {
  int orig;
  double sign;
  double offset;
};

struct Simplex {
  Tableau T;                 // m constraint rows | rhs, plus one working cost row
  std::vector<int> basis;    // basic column per row
  std::vector<bool> can_enter;
  int m = 0, ncols = 0;      // constraint rows, columns excluding rhs
  long steps = 0;
  long max_steps = 0;
  bool force_bland = false;  // Bland's rule from the first pivot (retry mode)

  LD rhs(int i) const { return T(i, ncols); }

  LD min_basic() const {
    LD v = 0.0L;
    for (int i = 0; i < m; ++i) v = std::min(v, rhs(i));
    return v;
  }

  // Price out `cost` (size ncols) against the current basis into the cost row.
  void set_cost_row(const VecL& cost) {
    T.row(m).head(ncols) = -cost.transpose();
    T(m, ncols) = 0.0;
    for (int i = 0; i < m; ++i)
      if (cost(basis[i]) != 0.0L) T.row(m) += cost(basis[i]) * T.row(i);
  }

  void pivot(int row, int col) {
    T.row(row) /= T(row, col);
    for (int i = 0; i <= m; ++i) {
      if (i == row) continue;
      LD f = T(i, col);
      if (f != 0.0L) T.row(i) -= f * T.row(row);
    }
    basis[row] = col;
  }

  // Maximizes the priced-out cost row. Returns optimal/unbounded/failure.
  LpStatus optimize() {
    int degenerate_run = 0;
    while (true) {
      if (++steps > max_steps) return LpStatus::numerical_failure;
      if (steps % 64 == 0 && !T.allFinite()) return LpStatus::numerical_failure;
      // Entering column: Dantzig (most negative cost-row entry, smallest
      // index on ties); after a run of degenerate pivots, Bland's rule
      // (smallest eligible index), which rules out cycling.
      const bool bland = force_bland || degenerate_run >= kDegenerateRun;
      int enter = -1;
      LD best = -kReducedTol;
      for (int j = 0; j < ncols; ++j) {
        if (!can_enter[j]) continue;
        LD c = T(m, j);
        if (c < best) {
          enter = j;
          if (bland) break;
          best = c;
        }
      }
      if (enter < 0) return LpStatus::optimal;
      // Leaving row: minimum ratio over every row with a positive pivot
      // element — excluding any such row, however small its element, lets
      // the step overshoot that row's ratio and leave the basis infeasible
      // by an amount the step size does not bound. Ties inside a 1e-12
      // window go to the smallest basis variable index under Bland's rule
      // (required by the anti-cycling proof) and otherwise to the largest
      // pivot element, which matters at degenerate vertices where many rows
      // tie at ratio zero and a tiny pivot would amplify roundoff.
      int leave = -1;
      LD best_ratio = kInf;
      for (int i = 0; i < m; ++i) {
        LD a = T(i, enter);
        if (a <= kPivotTol) continue;
        LD ratio = std::max(rhs(i), 0.0L) / a;
        if (ratio < best_ratio - 1e-12L) {
          best_ratio = ratio;
          leave = i;
        } else if (ratio < best_ratio + 1e-12L && leave >= 0) {
          bool better = bland ? basis[i] < basis[leave] : a > T(leave, enter);
          if (better) leave = i;
        }
      }
      if (leave < 0) return LpStatus::unbounded;
      degenerate_run = best_ratio <= 1e-12L ? degenerate_run + 1 : 0;
      pivot(leave, enter);
    }
  }
};

}  // namespace

void LinearProgram::add_constraint(Vec row, Relation rel, double rhs_value) {
  if (row.size() != objective.size())
    throw ValidationError("lp: constraint dimension mismatch");
  rows.push_back(std::move(row));
  rels.push_back(rel);
  rhs.push_back(rhs_value);
}

static LpSolution solve_lp_attempt(const LinearProgram& lp, bool force_bland) {
  const int n0 = lp.num_vars();
  const int m0 = lp.num_constraints();
  if (n0 == 0) throw ValidationError("lp: no variables");
  for (const auto& r : lp.rows)
    if (r.size() != n0) throw ValidationError("lp: constraint dimension mismatch");

  // Internally always maximize; minimization flips the objective here and
  // the duals on the way out.
  Vec c0 = lp.maximize ? lp.objective : Vec(-lp.objective);

  // Rewrite general bounds so every internal variable is >= 0: shift when
  // the lower bound is finite, mirror when only the upper bound is, split
  // into a difference of nonnegative parts when free. Residual finite upper
  // bounds become explicit rows.
  std::vector<VarMap> vmap;
  std::vector<std::pair<int, double>> cap_rows;  // internal var, residual cap
  for (int i = 0; i < n0; ++i) {
    double lo = lp.lower(i), up = lp.upper(i);
    if (lo > up) throw ValidationError("lp: empty variable bound interval");
    if (std::isfinite(lo)) {
      vmap.push_back({i, 1.0, lo});
      if (std::isfinite(up)) cap_rows.push_back({static_cast<int>(vmap.size()) - 1, up - lo});
    } else if (std::isfinite(up)) {
      vmap.push_back({i, -1.0, up});
    } else {
      vmap.push_back({i, 1.0, 0.0});
      vmap.push_back({i, -1.0, 0.0});
    }
  }
  const int nz = static_cast<int>(vmap.size());

  const int mb = m0 + static_cast<int>(cap_rows.size());
  Mat A = Mat::Zero(mb, nz);
  Vec b = Vec::Zero(mb);
  std::vector<Relation> rel(mb);
  std::vector<double> dual_sign(mb, 1.0);
  for (int r = 0; r < m0; ++r) {
    double shift = 0.0;
    for (int z = 0; z < nz; ++z) {
      A(r, z) = lp.rows[r](vmap[z].orig) * vmap[z].sign;
      shift += lp.rows[r](vmap[z].orig) * vmap[z].offset;
    }
    rel[r] = lp.rels[r];
    b(r) = lp.rhs[r] - shift;
  }
  Vec cz = Vec::Zero(nz);
  for (int z = 0; z < nz; ++z) cz(z) = c0(vmap[z].orig) * vmap[z].sign;
  for (size_t k = 0; k < cap_rows.size(); ++k) {
    int r = m0 + static_cast<int>(k);
    A(r, cap_rows[k].first) = 1.0;
    b(r) = cap_rows[k].second;
    rel[r] = Relation::le;
  }

  // Normalize to b >= 0 (flipping the relation and the reported dual sign).
  for (int r = 0; r < mb; ++r) {
    if (b(r) < 0.0) {
      A.row(r) = -A.row(r);
      b(r) = -b(r);
      dual_sign[r] = -1.0;
      rel[r] = rel[r] == Relation::le ? Relation::ge
             : rel[r] == Relation::ge ? Relation::le
                                      : Relation::eq;
    }
  }

  // Equilibrate. Obedience-style inputs mix rows whose coefficients are
  // products of small weights (1e-8 and below) with unit-coefficient rows;
  // against data like that the absolute pivot and reduced-cost thresholds
  // are meaningless, columns of uniformly tiny entries fall below the ratio
  // test's eligibility cutoff (feasibility damage), and pricing stalls on
  // directions it cannot see. Alternating geometric-mean row/column scaling
  // brings every nonzero block to order one; factors are powers of two, so
  // the scaled data carries no new roundoff. Variables and duals are
  // unscaled on the way out.
  Vec row_scale = Vec::Ones(mb), col_scale = Vec::Ones(nz);
  {
    auto pow2_factor = [](double lo, double hi) {
      return std::exp2(-std::round(0.5 * (std::log2(lo) + std::log2(hi))));
    };
    for (int pass = 0; pass < 3; ++pass) {
      for (int r = 0; r < mb; ++r) {
        double lo = kInf, hi = 0.0;
        for (int z = 0; z < nz; ++z) {
          double a = std::abs(A(r, z));
          if (a > 0.0) { lo = std::min(lo, a); hi = std::max(hi, a); }
        }
        if (hi == 0.0) continue;
        double f = pow2_factor(lo, hi);
        A.row(r) *= f;
        b(r) *= f;
        row_scale(r) *= f;
      }
      for (int z = 0; z < nz; ++z) {
        double lo = kInf, hi = 0.0;
        for (int r = 0; r < mb; ++r) {
          double a = std::abs(A(r, z));
          if (a > 0.0) { lo = std::min(lo, a); hi = std::max(hi, a); }
        }
        if (hi == 0.0) continue;
        double f = pow2_factor(lo, hi);
        A.col(z) *= f;
        col_scale(z) *= f;
      }
    }
    for (int z = 0; z < nz; ++z) cz(z) *= col_scale(z);
  }

  // Column layout: core | one slack/surplus per inequality | artificials
  // (for equalities and >= rows, whose surplus starts infeasible).
  std::vector<int> slack_col(mb, -1), artif_col(mb, -1);
  int ncols = nz;
  for (int r = 0; r < mb; ++r)
    if (rel[r] != Relation::eq) slack_col[r] = ncols++;
  const int first_artif = ncols;
  for (int r = 0; r < mb; ++r)
    if (rel[r] == Relation::eq || rel[r] == Relation::ge) artif_col[r] = ncols++;

  Simplex s;
  s.m = mb;
  s.ncols = ncols;
  s.max_steps = 2000 + 200L * (mb + ncols);
  s.force_bland = force_bland;
  s.T = Tableau::Zero(mb + 1, ncols + 1);
  s.basis.assign(mb, -1);
  s.can_enter.assign(ncols, true);
  for (int r = 0; r < mb; ++r) {
    s.T.block(r, 0, 1, nz) = A.row(r).cast<LD>();
    if (slack_col[r] >= 0) s.T(r, slack_col[r]) = rel[r] == Relation::le ? 1.0L : -1.0L;
    if (artif_col[r] >= 0) {
      s.T(r, artif_col[r]) = 1.0L;
      s.basis[r] = artif_col[r];
    } else {
      s.basis[r] = slack_col[r];
    }
    s.T(r, ncols) = b(r);
  }
  for (int j = first_artif; j < ncols; ++j) s.can_enter[j] = false;

  // Pristine copy of the constraint block for the refactorization step:
  // pivoting rewrites T in place, and the basic point is recomputed from the
  // original data once an optimal basis is known.
  const MatL A0 = s.T.topLeftCorner(mb, ncols);
  const VecL b0 = s.T.col(ncols).head(mb);

  LpSolution out;
  out.x = Vec::Zero(n0);
  out.duals = Vec::Zero(m0);

  // Phase 1: maximize minus the sum of artificials.
  if (first_artif < ncols) {
    VecL c1 = VecL::Zero(ncols);
    for (int j = first_artif; j < ncols; ++j) c1(j) = -1.0L;
    s.set_cost_row(c1);
    LpStatus st = s.optimize();
    if (st == LpStatus::numerical_failure || st == LpStatus::unbounded ||
        s.min_basic() < -kPhase1Tol) {
      out.status = LpStatus::numerical_failure;
      return out;
    }
    if (-s.T(s.m, ncols) > kPhase1Tol) {
      out.status = LpStatus::infeasible;
      return out;
    }
    // Drive leftover artificials out of the basis; a row offering no real
    // pivot column is redundant and stays pinned at zero.
    for (int r = 0; r < mb; ++r) {
      if (s.basis[r] < first_artif) continue;
      for (int j = 0; j < first_artif; ++j) {
        if (std::abs(s.T(r, j)) > kPivotTol) {
          s.pivot(r, j);
          break;
        }
      }
    }
  }

  // Phase 2 on the real objective; artificials may never re-enter.
  VecL c2 = VecL::Zero(ncols);
  c2.head(nz) = cz.cast<LD>();
  s.set_cost_row(c2);
  LpStatus st = s.optimize();
  if (st != LpStatus::optimal) {
    out.status = st;
    return out;
  }
  // A basic value driven negative means a ratio-test overshoot slipped
  // through; fail here so the caller's retry runs instead of the audit
  // rejecting a garbage point later.
  if (s.min_basic() < -kPhase1Tol) {
    out.status = LpStatus::numerical_failure;
    return out;
  }

  // Refactorize before reporting: thousands of elementary row operations
  // drift, so the basic point and the multipliers are recomputed in one
  // linear solve from the pristine matrix. B y = c_B gives each row's
  // multiplier y_r, which is exactly what the final cost row shows at that
  // row's identity (slack or artificial) column, minus the drift.
  // Acceptance is by residual, not by a rank estimate: a nearly singular
  // basis can still solve its system to machine precision, and that is the
  // only property the audit below cares about.
  VecL xb, y;
  bool refined_x = false, refined_y = false;
  {
    MatL B(mb, mb);
    VecL cb(mb);
    for (int i = 0; i < mb; ++i) {
      B.col(i) = A0.col(s.basis[i]);
      cb(i) = c2(s.basis[i]);
    }
    Eigen::FullPivLU<MatL> lu(B);
    xb = lu.solve(b0);
    if ((B * xb - b0).cwiseAbs().maxCoeff() <= 1e-9L * (1.0L + b0.cwiseAbs().maxCoeff()))
      refined_x = true;
    y = Eigen::FullPivLU<MatL>(MatL(B.transpose())).solve(cb);
    if ((B.transpose() * y - cb).cwiseAbs().maxCoeff() <= 1e-9L * (1.0L + cb.cwiseAbs().maxCoeff()))
      refined_y = true;
  }

  VecL z = VecL::Zero(ncols);
  for (int r = 0; r < mb; ++r)
    z(s.basis[r]) = std::max(refined_x ? xb(r) : s.rhs(r), 0.0L);
  for (int zi = 0; zi < nz; ++zi)
    out.x(vmap[zi].orig) +=
        static_cast<double>(vmap[zi].sign * z(zi) * static_cast<LD>(col_scale(zi))) +
        vmap[zi].offset;
  out.objective = lp.objective.dot(out.x);

  // Duals: the refined multipliers when available, otherwise read off the
  // final cost row at each row's identity column — the artificial column
  // where one exists (its phase-2 cost is zero), else the slack column
  // (negated for surplus columns).
  for (int r = 0; r < m0; ++r) {
    LD yr = refined_y ? y(r)
            : artif_col[r] >= 0
                ? s.T(s.m, artif_col[r])
                : s.T(s.m, slack_col[r]) * (rel[r] == Relation::le ? 1.0L : -1.0L);
    yr *= static_cast<LD>(dual_sign[r] * row_scale(r));
    if (!lp.maximize) yr = -yr;
    out.duals(r) = static_cast<double>(yr);
  }

  // Never report a silently wrong answer: audit the reported point against
  // every original constraint and bound.
  double scale = 1.0;
  for (int r = 0; r < m0; ++r) scale = std::max(scale, std::abs(lp.rhs[r]));
  for (int r = 0; r < m0; ++r) {
    double lhs = lp.rows[r].dot(out.x);
    double viol = lp.rels[r] == Relation::le ? lhs - lp.rhs[r]
                : lp.rels[r] == Relation::ge ? lp.rhs[r] - lhs
                                             : std::abs(lhs - lp.rhs[r]);
    if (viol > kCheckTol * scale) {
      out.status = LpStatus::numerical_failure;
      return out;
    }
  }
  for (int i = 0; i < n0; ++i) {
    if (out.x(i) < lp.lower(i) - kCheckTol || out.x(i) > lp.upper(i) + kCheckTol) {
      out.status = LpStatus::numerical_failure;
      return out;
    }
  }

  out.status = LpStatus::optimal;
  return out;
}

LpSolution solve_lp(const LinearProgram& lp) {
  LpSolution out = solve_lp_attempt(lp, false);
  // The audit rejects drifted answers rather than reporting them; retry any
  // non-optimal outcome with Bland's rule from the first pivot, which walks
  // a different (cycle-free) path through the degenerate vertices that
  // cause the drift. Genuine infeasibility and unboundedness are stable
  // across the two pivot orders, so the retry merely reconfirms them.
  if (out.status != LpStatus::optimal) out = solve_lp_attempt(lp, true);
  return out;
}

}  // namespace bp
