#include "bp/robust.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "bp/errors.hpp"
#include "bp/instances.hpp"
#include "bp/lp.hpp"

namespace bp {
namespace {

constexpr int kMaxVertexStates = 12;

// One obedience row per (recommended action, deviation): following a must
// beat a2 in expectation under mu. Row layout matches sigma(w,a) -> w*m + a.
void add_obedience_rows(LinearProgram& lp, const PersuasionInstance& inst, const Belief& mu) {
  const int n = inst.num_states(), m = inst.num_actions();
  for (int a = 0; a < m; ++a) {
    for (int a2 = 0; a2 < m; ++a2) {
      if (a2 == a) continue;
      Vec row = Vec::Zero(lp.num_vars());
      for (int w = 0; w < n; ++w) row[w * m + a] = mu[w] * (inst.u(w, a) - inst.u(w, a2));
      lp.add_constraint(std::move(row), Relation::ge, 0.0);
    }
  }
}

void add_row_sum_rows(LinearProgram& lp, int n, int m) {
  for (int w = 0; w < n; ++w) {
    Vec row = Vec::Zero(lp.num_vars());
    row.segment(w * m, m).setOnes();
    lp.add_constraint(std::move(row), Relation::eq, 1.0);
  }
}

OptResult mechanism_from_solution(const PersuasionInstance& inst, const LpSolution& sol,
                                  const char* who) {
  if (sol.status != LpStatus::optimal)
    throw SolverError(std::string(who) + ": solver did not reach an optimum");
  const int n = inst.num_states(), m = inst.num_actions();
  Mat kernel(n, m);
  for (int w = 0; w < n; ++w)
    for (int a = 0; a < m; ++a) kernel(w, a) = std::max(0.0, sol.x[w * m + a]);
  return {SignalingMechanism::straightforward(inst, kernel), sol.objective};
}

}  // namespace

std::vector<Belief> ball_vertices(const CandidatePriorSet& set) {
  const Vec& g = set.center.weights();
  const int n = static_cast<int>(g.size());
  if (n > kMaxVertexStates)
    throw ValidationError("ball_vertices: state space too large for enumeration; use robust_opt_dual");
  const double eps = set.radius;
  if (eps <= 1e-15) return {set.center};

  std::vector<Vec> verts;
  // Simplex corners inside the ball are always vertices of the clipped body.
  for (int i = 0; i < n; ++i) {
    if (2.0 * (1.0 - g[i]) <= eps + 1e-12) {
      Vec e = Vec::Zero(n);
      e[i] = 1.0;
      verts.push_back(std::move(e));
    }
  }
  // Every remaining vertex moves eps/2 onto state i, zeroes a set Z of other
  // states, and drops the slack onto state j: mu = g + (eps/2)e_i
  // + (sum_Z g - eps/2)e_j - sum_Z g_w e_w. Enumerate and keep the feasible
  // ones at exact l1-distance eps.
  std::vector<int> rest;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      rest.clear();
      for (int w = 0; w < n; ++w)
        if (w != i && w != j) rest.push_back(w);
      const int subsets = 1 << rest.size();
      for (int mask = 0; mask < subsets; ++mask) {
        double zeroed = 0.0;
        for (std::size_t k = 0; k < rest.size(); ++k)
          if (mask >> k & 1) zeroed += g[rest[k]];
        if (zeroed > eps / 2.0 + 1e-12) continue;
        Vec mu = g;
        mu[i] += eps / 2.0;
        mu[j] += zeroed - eps / 2.0;
        for (std::size_t k = 0; k < rest.size(); ++k)
          if (mask >> k & 1) mu[rest[k]] = 0.0;
        if (mu.minCoeff() < -1e-12) continue;
        mu = mu.cwiseMax(0.0);
        if (std::abs(mu.sum() - 1.0) > 1e-9) continue;
        if (std::abs((mu - g).cwiseAbs().sum() - eps) > 1e-9) continue;
        verts.push_back(std::move(mu));
      }
    }
  }

  std::vector<Belief> out;
  for (const Vec& v : verts) {
    bool dup = false;
    for (const Belief& kept : out) {
      if ((v - kept.weights()).cwiseAbs().sum() < 1e-7) {
        dup = true;
        break;
      }
    }
    if (!dup) out.emplace_back(v);
  }
  return out;
}

OptResult robust_opt(const PersuasionInstance& inst, const Belief& objective_prior,
                     const std::vector<Belief>& priors) {
  if (priors.empty()) throw ValidationError("robust_opt: empty prior list");
  const int n = inst.num_states(), m = inst.num_actions();
  if (objective_prior.size() != n) throw ValidationError("robust_opt: objective prior size mismatch");
  for (const Belief& mu : priors)
    if (mu.size() != n) throw ValidationError("robust_opt: prior size mismatch");

  LinearProgram lp(n * m);
  for (int w = 0; w < n; ++w)
    for (int a = 0; a < m; ++a) lp.objective[w * m + a] = objective_prior[w] * inst.v(w, a);
  add_row_sum_rows(lp, n, m);
  for (const Belief& mu : priors) add_obedience_rows(lp, inst, mu);
  return mechanism_from_solution(inst, solve_lp(lp), "robust_opt");
}

OptResult robust_opt(const PersuasionInstance& inst, const Belief& objective_prior,
                     const CandidatePriorSet& set) {
  return robust_opt(inst, objective_prior, ball_vertices(set));
}

OptResult robust_opt_dual(const PersuasionInstance& inst, const Belief& objective_prior,
                          const CandidatePriorSet& set) {
  const int n = inst.num_states(), m = inst.num_actions();
  if (objective_prior.size() != n)
    throw ValidationError("robust_opt_dual: objective prior size mismatch");
  if (set.center.size() != n) throw ValidationError("robust_opt_dual: center size mismatch");
  const Vec& g = set.center.weights();
  const double eps = set.radius;

  // Variables: sigma(w,a) at w*m+a, then per ordered action pair a != a2 a
  // block (theta in R^n >= 0, nu free, lambda >= 0) certifying
  //   min over the ball of  sum_w mu_w d_w sigma(w,a)  >= 0,
  // via duality: sum_w g_w d_w sigma(w,a) - theta.g - eps*lambda >= 0 and
  // |d_w sigma(w,a) + nu - theta_w| <= lambda for every w.
  const int pairs = m * (m - 1);
  const int block = n + 2;
  LinearProgram lp(n * m + pairs * block);
  for (int w = 0; w < n; ++w)
    for (int a = 0; a < m; ++a) lp.objective[w * m + a] = objective_prior[w] * inst.v(w, a);
  add_row_sum_rows(lp, n, m);

  int pair_index = 0;
  for (int a = 0; a < m; ++a) {
    for (int a2 = 0; a2 < m; ++a2) {
      if (a2 == a) continue;
      const int base = n * m + pair_index * block;
      const int nu = base + n, lambda = base + n + 1;
      lp.lower[nu] = -std::numeric_limits<double>::infinity();
      ++pair_index;

      Vec guard = Vec::Zero(lp.num_vars());
      for (int w = 0; w < n; ++w) {
        const double d = inst.u(w, a) - inst.u(w, a2);
        guard[w * m + a] = g[w] * d;
        guard[base + w] = -g[w];

        Vec upper_row = Vec::Zero(lp.num_vars());
        upper_row[w * m + a] = d;
        upper_row[nu] = 1.0;
        upper_row[base + w] = -1.0;
        upper_row[lambda] = -1.0;
        Vec lower_row = -upper_row;
        lower_row[lambda] = -1.0;
        lp.add_constraint(std::move(upper_row), Relation::le, 0.0);
        lp.add_constraint(std::move(lower_row), Relation::le, 0.0);
      }
      guard[lambda] = -eps;
      lp.add_constraint(std::move(guard), Relation::ge, 0.0);
    }
  }
  return mechanism_from_solution(inst, solve_lp(lp), "robust_opt_dual");
}

double gap(const PersuasionInstance& inst, const Belief& mu, const CandidatePriorSet& set) {
  if (!set.contains(mu)) throw ValidationError("gap: prior lies outside the candidate set");
  return std::max(0.0, solve_opt(inst, mu).value - robust_opt(inst, mu, set).value);
}

double gap(const PersuasionInstance& inst, const Belief& mu, const std::vector<Belief>& priors) {
  bool member = false;
  for (const Belief& p : priors) member = member || l1_distance(p, mu) <= 1e-9;
  if (!member) throw ValidationError("gap: prior lies outside the candidate set");
  return std::max(0.0, solve_opt(inst, mu).value - robust_opt(inst, mu, priors).value);
}

RobustConstruction construct_robust_mechanism(const PersuasionInstance& inst, const Belief& mu,
                                              double eps, const RegularityCertificate& cert) {
  const int n = inst.num_states(), m = inst.num_actions();
  if (mu.size() != n) throw ValidationError("construct_robust_mechanism: prior size mismatch");
  if (!(eps >= 0.0)) throw ValidationError("construct_robust_mechanism: eps must be nonnegative");
  if (!inst.in_prior_knowledge_set(mu))
    throw ValidationError("construct_robust_mechanism: prior entry below the floor p0");
  if (!(cert.D > 0.0)) throw ValidationError("construct_robust_mechanism: certificate has D <= 0");
  for (int a = 0; a < m; ++a) {
    auto it = cert.anchors.find(a);
    if (it == cert.anchors.end() || it->second.size() != n)
      throw ValidationError("construct_robust_mechanism: certificate missing an anchor");
    for (int a2 = 0; a2 < m; ++a2) {
      double slack = 0.0;
      for (int w = 0; w < n; ++w) slack += it->second[w] * (inst.u(w, a) - inst.u(w, a2));
      if (slack < -1e-9)
        throw ValidationError(
            "construct_robust_mechanism: certificate anchor is not a best-response point for " +
            inst.actions()[a]);
    }
  }

  const double p0 = inst.prior_floor(), D = cert.D;
  const double delta = 2.0 * eps / (p0 * D);

  if (eps > p0 * p0 * D / 4.0) {
    // The additive guarantee (4/(p0^2 D)) * eps is vacuous past this point.
    return {full_information_mechanism(inst).coalesce(inst),
            /*rho_bar=*/0.0, delta,
            /*full_information_fallback=*/true, solve_opt(inst, mu).value,
            /*value_bound=*/0.0};
  }

  OptResult opt = solve_opt(inst, mu);
  const Mat& sig = opt.mechanism.kernel();

  Vec weights = sig.transpose() * mu.weights();
  Vec xi = Vec::Zero(n);
  Mat xi_a = Mat::Zero(n, m);
  for (int a = 0; a < m; ++a) {
    if (weights[a] <= 1e-12) continue;
    const Vec post = mu.weights().cwiseProduct(sig.col(a)) / weights[a];
    xi_a.col(a) = (1.0 - delta) * post + delta * cert.anchors.at(a).weights();
    xi += weights[a] * xi_a.col(a);
  }

  double rho = 1.0;
  for (int w = 0; w < n; ++w)
    if (xi[w] > 0.0) rho = std::min(rho, mu[w] / xi[w]);

  Mat kernel = Mat::Zero(n, m);
  for (int a = 0; a < m; ++a) {
    if (weights[a] <= 1e-12) continue;
    for (int w = 0; w < n; ++w) kernel(w, a) += rho * weights[a] * xi_a(w, a) / mu[w];
  }
  if (1.0 - rho >= 1e-12) {
    if (rho < p0 / (p0 + delta) - 1e-9)
      throw SolverError("construct_robust_mechanism: retention fell below p0/(p0+delta)");
    // Leftover mass is revealed; the receiver plays a point-mass best
    // response, so these signals are persuasive at any prior.
    const Vec chi = (mu.weights() - rho * xi) / (1.0 - rho);
    for (int w = 0; w < n; ++w) {
      if (chi[w] <= 0.0) continue;
      const int a = best_response_sender_preferred(inst, Belief::point_mass(n, w));
      kernel(w, a) += (1.0 - rho) * chi[w] / mu[w];
    }
  }
  for (int w = 0; w < n; ++w) kernel.row(w) /= kernel.row(w).sum();
  return {SignalingMechanism::straightforward(inst, std::move(kernel)),
          rho, delta, /*full_information_fallback=*/false,
          opt.value, rho * (1.0 - delta) * opt.value};
}

SignalingMechanism closed_form_I0_sigma_star(double D, double p0) {
  auto [inst, mu] = build_instance_I0(D, p0);
  Mat kernel = Mat::Zero(3, 5);
  const double tilt = D / (2.0 * (1.0 - p0));
  kernel(0, 1) = kernel(0, 2) = 0.5;
  kernel(1, 1) = kernel(2, 2) = 0.5 + tilt;
  kernel(1, 2) = kernel(2, 1) = 0.5 - tilt;
  return SignalingMechanism::straightforward(inst, kernel);
}

SignalingMechanism closed_form_I0_sigma_hat(double D, double p0, double eps) {
  if (!(eps > 0.0) || !(eps < D))
    throw ValidationError("closed_form_I0_sigma_hat: requires eps in (0, D)");
  auto [inst, mu] = build_instance_I0(D, p0);

  // At the robust optimum against the priors mu* +- (eps/2)(e1 - e2) the
  // kernel keeps the mirror symmetry of the instance: rows 1 and 2 are
  // (x, y, 1-x-y) on actions (a1, a2, a3) and (y, x, 1-x-y) on (a2, a1, a4).
  // Two obedience constraints bind and pin (x, y) down: recommending a1 must
  // tie against a0 at the prior tilted toward w2, and against a3 at the
  // prior tilted toward w1. Solve that 2x2 linear system.
  const double ap = (1.0 - p0 + eps) / 2.0, am = (1.0 - p0 - eps) / 2.0;
  const double a11 = am * inst.u(1, 1);
  const double a12 = ap * inst.u(2, 1);
  const double b1 = -(p0 / 2.0) * inst.u(0, 1);
  const double a21 = ap * (inst.u(1, 1) - inst.u(1, 3));
  const double a22 = am * (inst.u(2, 1) - inst.u(2, 3));
  const double b2 = -(p0 / 2.0) * (inst.u(0, 1) - inst.u(0, 3));
  const double det = a11 * a22 - a12 * a21;
  if (std::abs(det) < 1e-15)
    throw DomainError("closed_form_I0_sigma_hat: binding system is singular");
  const double x = (b1 * a22 - b2 * a12) / det;
  const double y = (a11 * b2 - a21 * b1) / det;
  if (!(x >= 0.0) || !(y >= 0.0) || !(x + y <= 1.0))
    throw DomainError("closed_form_I0_sigma_hat: closed form leaves the kernel domain");

  Mat kernel = Mat::Zero(3, 5);
  kernel(0, 1) = kernel(0, 2) = 0.5;
  kernel(1, 1) = kernel(2, 2) = x;
  kernel(1, 2) = kernel(2, 1) = y;
  kernel(1, 3) = kernel(2, 4) = 1.0 - x - y;
  return SignalingMechanism::straightforward(inst, kernel);
}

}  // namespace bp
