#include "bp/instances.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "bp/errors.hpp"
#include "bp/persuasion.hpp"
#include "bp/rng.hpp"

namespace bp {
namespace {

std::vector<std::string> indexed_labels(const char* prefix, int count) {
  std::vector<std::string> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

std::pair<PersuasionInstance, Belief> build_instance_I0(double D, double p0) {
  if (!(D > 0.0) || !(p0 > 0.0)) throw ValidationError("build_instance_I0: D and p0 must be positive");
  if (!(D * p0 < 1.0 / 64.0)) throw ValidationError("build_instance_I0: requires D*p0 < 1/64");
  if (!(p0 <= 1.0 / 3.0)) throw ValidationError("build_instance_I0: requires p0 <= 1/3");

  Mat u = Mat::Zero(3, 5);
  u(0, 1) = 2.0 * D * D;
  u(0, 2) = 2.0 * D * D;
  u(0, 3) = -2.0 * D * (1.0 - p0 - 2.0 * D);
  u(0, 4) = -2.0 * D * (1.0 - p0 - 2.0 * D);
  u(1, 1) = (1.0 - 2.0 * D) * (1.0 - D) - p0;
  u(1, 2) = (D + 1.0) * (2.0 * D - 1.0) + p0;
  u(1, 3) = 2.0 * (1.0 - p0 - 2.0 * D) * (1.0 - D);
  u(1, 4) = -2.0 * (1.0 - p0 - 2.0 * D) * (D + 1.0);
  // The third state mirrors the second under the swaps a1<->a2 and a3<->a4.
  u(2, 1) = u(1, 2);
  u(2, 2) = u(1, 1);
  u(2, 3) = u(1, 4);
  u(2, 4) = u(1, 3);

  Mat v = Mat::Zero(3, 5);
  v.col(1).setOnes();
  v.col(2).setOnes();

  PersuasionInstance inst(indexed_labels("w", 3), indexed_labels("a", 5), u, v, p0);
  Vec mu(3);
  mu << p0, (1.0 - p0) / 2.0, (1.0 - p0) / 2.0;
  return {std::move(inst), Belief(mu)};
}

std::pair<Belief, Belief> build_lower_bound_priors(const Belief& mu_star, double eps) {
  if (mu_star.size() != 3) throw ValidationError("build_lower_bound_priors: expects a 3-state prior");
  const double p0 = mu_star[0];
  if (!(eps > 0.0) || !(eps < 1.0 - 3.0 * p0))
    throw ValidationError("build_lower_bound_priors: requires eps in (0, 1 - 3*p0)");
  Vec up = mu_star.weights(), down = mu_star.weights();
  up[1] += eps / 2.0;
  up[2] -= eps / 2.0;
  down[1] -= eps / 2.0;
  down[2] += eps / 2.0;
  return {Belief(up), Belief(down)};
}

PersuasionInstance random_regular_instance(std::uint64_t seed, int num_states, int num_actions,
                                           double p0, double d_floor, int max_attempts) {
  if (num_states < 2 || num_actions < 2)
    throw ValidationError("random_regular_instance: needs at least 2 states and 2 actions");
  Philox rng(seed, 0);
  auto exponential = [&rng]() { return -std::log(1.0 - rng.uniform()); };
  auto normal = [&rng]() {
    const double u1 = 1.0 - rng.uniform();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  };

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    // Proposal: each action gets a Dirichlet anchor belief; utilities make the
    // action a best response exactly in the anchor's nearest-neighbor cell,
    // plus small noise. Most draws then pass the inscribed-radius check.
    Mat u(num_states, num_actions);
    for (int a = 0; a < num_actions; ++a) {
      Vec eta(num_states);
      for (int w = 0; w < num_states; ++w) eta[w] = exponential();
      eta /= eta.sum();
      for (int w = 0; w < num_states; ++w) u(w, a) = 2.0 * eta[w] - eta.squaredNorm();
    }
    for (int w = 0; w < num_states; ++w)
      for (int a = 0; a < num_actions; ++a) u(w, a) += 0.01 * normal();
    u /= u.cwiseAbs().maxCoeff();

    Mat v(num_states, num_actions);
    for (int w = 0; w < num_states; ++w)
      for (int a = 0; a < num_actions; ++a) v(w, a) = rng.uniform();

    PersuasionInstance inst(indexed_labels("w", num_states), indexed_labels("a", num_actions),
                            u, v, p0);
    try {
      if (estimate_regularity(inst).D >= d_floor) return inst;
    } catch (const ValidationError&) {
      // Some best-response region is empty; draw again.
    }
  }
  throw DomainError("random_regular_instance: no regular instance found after " +
                    std::to_string(max_attempts) + " attempts");
}

std::pair<PersuasionInstance, Belief> build_two_state_example() {
  Mat u(2, 2), v(2, 2);
  // States (innocent, guilty), actions (acquit, convict). The receiver wants
  // to match the state; the sender wants convictions.
  u << 1.0, 0.0,
       0.0, 1.0;
  v << 0.0, 1.0,
       0.0, 1.0;
  PersuasionInstance inst({"innocent", "guilty"}, {"acquit", "convict"}, u, v, 0.1);
  Vec mu(2);
  mu << 0.7, 0.3;
  return {std::move(inst), Belief(mu)};
}

}  // namespace bp
