#pragma once

#include <optional>

#include "bp/belief.hpp"
#include "bp/instance.hpp"
#include "bp/mechanism.hpp"
#include "bp/rng.hpp"

namespace bp {

// Confidence radius around the empirical distribution. Equals 2 at t = 0
// (the whole simplex); otherwise min{sqrt(n/t)*(1 + sqrt(phi*ln T)), 2}.
// The logarithm is natural.
double epsilon_schedule(int t, int T, int num_states, double phi);

// High-probability bound on the chance any round's mechanism fails to be
// persuasive at the true prior: T^(1 - 3*phi*sqrt(n)/56), clamped to [0,1].
double persuasiveness_bound(int T, int num_states, double phi);

struct RaiConfig {
  int T = 1;          // horizon the radius schedule is tuned for
  double phi = 20.0;  // exploration knob multiplying ln T in the radius
  // When true, the robust LP is re-solved only after the empirical
  // distribution drifts more than epsilon/4 in l1 from the last solve.
  // An approximation of the per-round re-solve; flagged in run metadata.
  bool lazy = false;
  // Starting point for the empirical estimate before any observation. Any
  // element of the prior knowledge set is admissible; defaults to its
  // barycenter, which is exactly the uniform distribution.
  std::optional<Vec> gamma0;
};

struct LearnerState {
  int t;
  Vec counts;    // per-state observation counts; always sums to t
  Belief gamma;  // empirical distribution, counts/t for t >= 1
  double epsilon;
  std::optional<SignalingMechanism> last_mechanism;
  Belief gamma_at_solve;  // empirical distribution when the LP last ran
};

// t = 0, zero counts, gamma at the barycenter of the prior knowledge set
// (exactly uniform), epsilon = 2.
LearnerState initial_learner_state(const PersuasionInstance& inst, const RaiConfig& config);

// One round of the learning algorithm: commit to the mechanism that is
// persuasive on the whole ball around gamma and optimal at gamma, then
// sample a recommendation for the realized state, then fold the observation
// into the state. The mechanism never depends on the realized state of its
// own round. Returns the recommended action; the committed mechanism stays
// in state.last_mechanism.
int rai_step(const PersuasionInstance& inst, LearnerState& state, int realized_state,
             Philox& rng, const RaiConfig& config);

// Baseline that ignores persuasion: a receiver best response to the realized
// state's point mass, ties broken toward the sender.
int full_information_step(const PersuasionInstance& inst, int realized_state);

// Zero-regret reference arm: samples the optimal mechanism at the true prior.
int clairvoyant_step(const PersuasionInstance& inst, const Belief& mu_true, int realized_state,
                     Philox& rng);
// Same with the optimal mechanism precomputed (it is deterministic per prior).
int clairvoyant_step(const SignalingMechanism& optimal_mechanism, int realized_state, Philox& rng);

}  // namespace bp
