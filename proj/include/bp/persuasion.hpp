#pragma once

#include <vector>

#include "bp/belief.hpp"
#include "bp/instance.hpp"
#include "bp/mechanism.hpp"
#include "bp/prior_set.hpp"

namespace bp {

// All receiver best responses argmax_a E_mu[u(w,a)], ties included,
// ascending action order.
std::vector<int> best_responses(const PersuasionInstance& inst, const Belief& mu);

// Single best response with ties broken toward the sender's expected value
// at mu (then toward the smaller action index).
int best_response_sender_preferred(const PersuasionInstance& inst, const Belief& mu);

// Sender's expected utility sum_w sum_s mu(w) sigma(w,s) v(w, decode(s)).
double value(const PersuasionInstance& inst, const Belief& mu, const SignalingMechanism& sigma);

// Posterior given a signal with positive marginal probability.
Belief posterior(const Belief& mu, const SignalingMechanism& sigma, int signal);

struct PersuasionAudit {
  bool persuasive = true;
  double worst_slack = 0.0;  // most negative unnormalized obedience slack
  int worst_signal = -1;
  int worst_alternative = -1;
};

// A mechanism is persuasive at mu when every positive-marginal signal's
// decoded action is a posterior best response. Checked in the unnormalized
// form sum_w mu(w) sigma(w,s) (u(w,a) - u(w,a')) >= -tol, which avoids
// dividing by near-zero signal marginals; zero-marginal signals pass
// vacuously.
PersuasionAudit is_persuasive(const PersuasionInstance& inst, const Belief& mu,
                              const SignalingMechanism& sigma, double tol = kPersuasiveTol);

struct OptResult {
  SignalingMechanism mechanism;
  double value = 0.0;
};

// OPT(mu): the sender-optimal persuasive straightforward mechanism at mu,
// solved as an LP over row-stochastic kernels with one obedience constraint
// per ordered action pair.
OptResult solve_opt(const PersuasionInstance& inst, const Belief& mu);

// Fully revealing mechanism: one signal per state, decoded to a receiver
// best response at that state's point mass (sender-preferred among ties).
// Persuasive at every prior.
SignalingMechanism full_information_mechanism(const PersuasionInstance& inst);

// For every action, the largest r_a (and center eta_a) such that the
// l1-ball of radius r_a around eta_a, taken within the simplex's affine
// hull, lies inside the region P_a where a is a receiver best response.
// One LP per action: a halfspace {mu : c.mu >= b} contains that ball iff
// c.eta - (r/2)(max_w c_w - min_w c_w) >= b. Throws ValidationError naming
// every action whose region is empty or has zero volume.
RegularityCertificate estimate_regularity(const PersuasionInstance& inst);

}  // namespace bp
