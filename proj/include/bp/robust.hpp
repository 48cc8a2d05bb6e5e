#pragma once

#include <vector>

#include "bp/belief.hpp"
#include "bp/instance.hpp"
#include "bp/mechanism.hpp"
#include "bp/persuasion.hpp"
#include "bp/prior_set.hpp"

namespace bp {

// Exact vertex list of {mu in the simplex : ||mu - center||_1 <= radius}.
// When the ball stays interior this is the n(n-1) points
// center + (radius/2)(e_i - e_j); otherwise the clipped polytope's vertices.
// Enumeration is intended for small state spaces (n <= 12); beyond that use
// robust_opt_dual, which never builds the vertex list.
std::vector<Belief> ball_vertices(const CandidatePriorSet& set);

// Sender-optimal mechanism persuasive at every prior in the list, scored at
// objective_prior. Never infeasible: full information satisfies every
// obedience constraint regardless of the prior.
OptResult robust_opt(const PersuasionInstance& inst, const Belief& objective_prior,
                     const std::vector<Belief>& priors);

// Same over an l1-ball, imposing obedience at each vertex (sufficient by
// linearity of the constraints in the prior).
OptResult robust_opt(const PersuasionInstance& inst, const Belief& objective_prior,
                     const CandidatePriorSet& set);

// Same optimum through one polynomial-size LP: each worst-case-over-the-ball
// obedience constraint is replaced by its dual over the ball's facet
// description, avoiding vertex enumeration entirely.
OptResult robust_opt_dual(const PersuasionInstance& inst, const Belief& objective_prior,
                          const CandidatePriorSet& set);

// Cost of robustness: solve_opt(mu).value minus the robust value over the
// set. Requires mu to belong to the set.
double gap(const PersuasionInstance& inst, const Belief& mu, const CandidatePriorSet& set);
double gap(const PersuasionInstance& inst, const Belief& mu, const std::vector<Belief>& priors);

struct RobustConstruction {
  SignalingMechanism mechanism;
  // Retention probability of the optimal split and the anchor mixing weight.
  // Guarantee when not falling back: value at mu >= rho_bar*(1-delta)*opt_value.
  double rho_bar = 1.0;
  double delta = 0.0;
  // True when eps exceeds p0^2*D/4: the additive guarantee is vacuous there,
  // so the full-information mechanism (persuasive everywhere) is returned.
  bool full_information_fallback = false;
  double opt_value = 0.0;
  double value_bound = 0.0;
};

// Explicit robust mechanism: mixes each posterior of the optimal split
// toward its action's anchor belief (weight delta = 2*eps/(p0*D)), keeps the
// largest feasible share rho_bar of the mixed split, and reveals the leftover
// mass. Output is persuasive at every prior within l1-distance eps of mu and
// loses at most (4/(p0^2*D))*eps of the optimal value.
RobustConstruction construct_robust_mechanism(const PersuasionInstance& inst, const Belief& mu,
                                              double eps, const RegularityCertificate& cert);

// Closed-form optimal mechanism for the three-state lower-bound instance at
// its worst-case prior. Requires D*p0 < 1/64.
SignalingMechanism closed_form_I0_sigma_star(double D, double p0);

// Closed-form robust optimum for the lower-bound instance against the prior
// pair mu* +- (eps/2)(e1 - e2). Entries solve the two obedience constraints
// that bind at the robust optimum; requires eps in (0, D).
SignalingMechanism closed_form_I0_sigma_hat(double D, double p0, double eps);

}  // namespace bp
