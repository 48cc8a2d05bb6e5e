#include "bp/persuasion.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bp/errors.hpp"
#include "bp/lp.hpp"

namespace bp {

namespace {
constexpr double kTieTol = 1e-12;

void check_dims(const PersuasionInstance& inst, const Belief& mu) {
  if (mu.size() != inst.num_states())
    throw ValidationError("persuasion: belief dimension does not match instance");
}
}  // namespace

std::vector<int> best_responses(const PersuasionInstance& inst, const Belief& mu) {
  check_dims(inst, mu);
  Vec expected = inst.receiver_utility().transpose() * mu.weights();
  double best = expected.maxCoeff();
  std::vector<int> out;
  for (int a = 0; a < inst.num_actions(); ++a)
    if (expected(a) >= best - kTieTol) out.push_back(a);
  return out;
}

int best_response_sender_preferred(const PersuasionInstance& inst, const Belief& mu) {
  Vec sender = inst.sender_utility().transpose() * mu.weights();
  int pick = -1;
  for (int a : best_responses(inst, mu))
    if (pick < 0 || sender(a) > sender(pick) + kTieTol) pick = a;
  return pick;
}

double value(const PersuasionInstance& inst, const Belief& mu, const SignalingMechanism& sigma) {
  check_dims(inst, mu);
  if (sigma.num_states() != inst.num_states())
    throw ValidationError("persuasion: mechanism state count does not match instance");
  double total = 0.0;
  for (int s = 0; s < sigma.num_signals(); ++s) {
    int a = sigma.decode(s);
    if (a < 0 || a >= inst.num_actions())
      throw ValidationError("persuasion: mechanism decodes to unknown action");
    for (int w = 0; w < inst.num_states(); ++w)
      total += mu[w] * sigma.prob(w, s) * inst.v(w, a);
  }
  return total;
}

Belief posterior(const Belief& mu, const SignalingMechanism& sigma, int signal) {
  double z = sigma.marginal(mu, signal);
  if (z <= 0.0) throw ValidationError("posterior: signal has zero marginal probability");
  Vec w = mu.weights().cwiseProduct(sigma.kernel().col(signal)) / z;
  return Belief(std::move(w));
}

PersuasionAudit is_persuasive(const PersuasionInstance& inst, const Belief& mu,
                              const SignalingMechanism& sigma, double tol) {
  check_dims(inst, mu);
  PersuasionAudit audit;
  const Mat& u = inst.receiver_utility();
  for (int s = 0; s < sigma.num_signals(); ++s) {
    if (sigma.marginal(mu, s) <= 0.0) continue;  // vacuously persuasive
    int a = sigma.decode(s);
    for (int alt = 0; alt < inst.num_actions(); ++alt) {
      if (alt == a) continue;
      double slack = 0.0;
      for (int w = 0; w < inst.num_states(); ++w)
        slack += mu[w] * sigma.prob(w, s) * (u(w, a) - u(w, alt));
      if (slack < audit.worst_slack) {
        audit.worst_slack = slack;
        audit.worst_signal = s;
        audit.worst_alternative = alt;
      }
    }
  }
  audit.persuasive = audit.worst_slack >= -tol;
  return audit;
}

OptResult solve_opt(const PersuasionInstance& inst, const Belief& mu) {
  check_dims(inst, mu);
  const int n = inst.num_states();
  const int m = inst.num_actions();
  const Mat& u = inst.receiver_utility();
  // Variables sigma(w,a), row-major; maximize sum mu(w) sigma(w,a) v(w,a).
  LinearProgram lp(n * m, /*maximize=*/true);
  for (int w = 0; w < n; ++w)
    for (int a = 0; a < m; ++a) lp.objective(w * m + a) = mu[w] * inst.v(w, a);
  for (int w = 0; w < n; ++w) {
    Vec row = Vec::Zero(n * m);
    row.segment(w * m, m).setOnes();
    lp.add_constraint(std::move(row), Relation::eq, 1.0);
  }
  for (int a = 0; a < m; ++a)
    for (int alt = 0; alt < m; ++alt) {
      if (alt == a) continue;
      Vec row = Vec::Zero(n * m);
      for (int w = 0; w < n; ++w) row(w * m + a) = mu[w] * (u(w, a) - u(w, alt));
      lp.add_constraint(std::move(row), Relation::ge, 0.0);
    }
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal)
    throw SolverError("solve_opt: LP did not reach optimality (status " +
                      std::to_string(static_cast<int>(sol.status)) + ")");
  Mat kernel(n, m);
  for (int w = 0; w < n; ++w)
    for (int a = 0; a < m; ++a) kernel(w, a) = sol.x(w * m + a);
  return OptResult{SignalingMechanism::straightforward(inst, std::move(kernel)), sol.objective};
}

SignalingMechanism full_information_mechanism(const PersuasionInstance& inst) {
  const int n = inst.num_states();
  Mat kernel = Mat::Identity(n, n);
  std::vector<int> decode(n);
  std::vector<std::string> signals;
  for (int w = 0; w < n; ++w) {
    decode[w] = best_response_sender_preferred(inst, Belief::point_mass(n, w));
    signals.push_back("reveal:" + inst.states()[w]);
  }
  return SignalingMechanism(std::move(signals), std::move(kernel), std::move(decode));
}

RegularityCertificate estimate_regularity(const PersuasionInstance& inst) {
  const int n = inst.num_states();
  const int m = inst.num_actions();
  const Mat& u = inst.receiver_utility();
  RegularityCertificate cert;
  std::string offenders;
  for (int a = 0; a < m; ++a) {
    // Variables (eta, r): max r subject to eta in the simplex, the ball
    // staying inside it (eta_w - r/2 >= 0) and inside every obedience
    // halfspace of action a.
    LinearProgram lp(n + 1, /*maximize=*/true);
    lp.objective(n) = 1.0;
    {
      Vec row = Vec::Zero(n + 1);
      row.head(n).setOnes();
      lp.add_constraint(std::move(row), Relation::eq, 1.0);
    }
    for (int w = 0; w < n; ++w) {
      Vec row = Vec::Zero(n + 1);
      row(w) = 1.0;
      row(n) = -0.5;
      lp.add_constraint(std::move(row), Relation::ge, 0.0);
    }
    for (int alt = 0; alt < m; ++alt) {
      if (alt == a) continue;
      Vec d = u.col(a) - u.col(alt);
      Vec row = Vec::Zero(n + 1);
      row.head(n) = d;
      row(n) = -(d.maxCoeff() - d.minCoeff()) / 2.0;
      lp.add_constraint(std::move(row), Relation::ge, 0.0);
    }
    LpSolution sol = solve_lp(lp);
    if (sol.status == LpStatus::infeasible || (sol.status == LpStatus::optimal && sol.objective <= 1e-9)) {
      offenders += offenders.empty() ? "" : ", ";
      offenders += inst.actions()[a];
      continue;
    }
    if (sol.status != LpStatus::optimal)
      throw SolverError("estimate_regularity: LP failure for action " + inst.actions()[a]);
    cert.radii[a] = sol.objective;
    cert.anchors.emplace(a, Belief(sol.x.head(n)));
  }
  if (!offenders.empty())
    throw ValidationError(
        "estimate_regularity: best-response region empty or zero-volume for action(s): " +
        offenders);
  cert.D = std::numeric_limits<double>::infinity();
  for (const auto& [a, r] : cert.radii) cert.D = std::min(cert.D, r);
  return cert;
}

}  // namespace bp
