#include "bp/learning.hpp"

#include <algorithm>
#include <cmath>

#include "bp/errors.hpp"
#include "bp/persuasion.hpp"
#include "bp/prior_set.hpp"
#include "bp/robust.hpp"

namespace bp {

double epsilon_schedule(int t, int T, int num_states, double phi) {
  if (t < 0 || T < 1) throw ValidationError("epsilon_schedule: requires t >= 0 and T >= 1");
  if (!(phi > 0.0)) throw ValidationError("epsilon_schedule: requires phi > 0");
  if (t == 0) return 2.0;
  const double raw =
      std::sqrt(static_cast<double>(num_states) / t) * (1.0 + std::sqrt(phi * std::log(T)));
  return std::min(raw, 2.0);
}

double persuasiveness_bound(int T, int num_states, double phi) {
  if (T < 2) throw ValidationError("persuasiveness_bound: requires T >= 2");
  const double exponent = 1.0 - 3.0 * phi * std::sqrt(static_cast<double>(num_states)) / 56.0;
  return std::clamp(std::pow(static_cast<double>(T), exponent), 0.0, 1.0);
}

LearnerState initial_learner_state(const PersuasionInstance& inst, const RaiConfig& config) {
  const int n = inst.num_states();
  Belief gamma = config.gamma0 ? Belief(*config.gamma0) : Belief::uniform(n);
  if (gamma.size() != n) throw ValidationError("initial_learner_state: gamma0 size mismatch");
  return {0, Vec::Zero(n), gamma, epsilon_schedule(0, config.T, n, config.phi),
          std::nullopt, gamma};
}

int rai_step(const PersuasionInstance& inst, LearnerState& state, int realized_state,
             Philox& rng, const RaiConfig& config) {
  if (realized_state < 0 || realized_state >= inst.num_states())
    throw ValidationError("rai_step: realized state out of range");

  const bool reuse = config.lazy && state.last_mechanism &&
                     l1_distance(state.gamma, state.gamma_at_solve) <= state.epsilon / 4.0;
  if (!reuse) {
    state.last_mechanism =
        robust_opt(inst, state.gamma, CandidatePriorSet(state.gamma, state.epsilon)).mechanism;
    state.gamma_at_solve = state.gamma;
  }

  const SignalingMechanism& mech = *state.last_mechanism;
  const int signal = rng.sample(mech.kernel().row(realized_state).transpose());
  const int action = mech.decode(signal);

  state.counts[realized_state] += 1.0;
  state.t += 1;
  state.gamma = Belief(state.counts / state.t);
  state.epsilon = epsilon_schedule(state.t, config.T, inst.num_states(), config.phi);
  return action;
}

int full_information_step(const PersuasionInstance& inst, int realized_state) {
  return best_response_sender_preferred(
      inst, Belief::point_mass(inst.num_states(), realized_state));
}

int clairvoyant_step(const PersuasionInstance& inst, const Belief& mu_true, int realized_state,
                     Philox& rng) {
  return clairvoyant_step(solve_opt(inst, mu_true).mechanism, realized_state, rng);
}

int clairvoyant_step(const SignalingMechanism& optimal_mechanism, int realized_state,
                     Philox& rng) {
  const int signal =
      rng.sample(optimal_mechanism.kernel().row(realized_state).transpose());
  return optimal_mechanism.decode(signal);
}

}  // namespace bp
