#pragma once

#include <cstdint>
#include <utility>

#include "bp/belief.hpp"
#include "bp/instance.hpp"

namespace bp {

// The three-state, five-action lower-bound instance. Receiver utilities are
// computed symbolically from (D, p0); the sender scores 1 exactly on actions
// a1 and a2. The worst-case prior mu* = (p0, (1-p0)/2, (1-p0)/2) is returned
// alongside. Requires D > 0, p0 > 0 and D*p0 < 1/64.
std::pair<PersuasionInstance, Belief> build_instance_I0(double D, double p0);

// The prior pair mu* +- (eps/2)(e1 - e2) used by the cost-of-robustness
// analysis. Requires eps in (0, 1 - 3*p0) so both stay inside B0.
std::pair<Belief, Belief> build_lower_bound_priors(const Belief& mu_star, double eps);

// Rejection-samples receiver utilities until every best-response region
// admits an inscribed l1-ball of radius >= d_floor. Proposals place a
// Dirichlet anchor belief per action and score each action by proximity to
// its anchor plus small normal noise, rescaled to unit max magnitude; sender
// utilities are uniform in [0,1]. Reproducible from the seed. Throws after
// max_attempts rejections.
PersuasionInstance random_regular_instance(std::uint64_t seed, int num_states, int num_actions,
                                           double p0, double d_floor = 0.02,
                                           int max_attempts = 500);

// Two-state textbook example: states {innocent, guilty}, actions
// {acquit, convict}; the receiver convicts iff the posterior probability of
// guilt is at least 1/2, the sender scores 1 on convictions. At prior
// P(guilty) = 0.3 the optimal sender value is 0.6.
std::pair<PersuasionInstance, Belief> build_two_state_example();

}  // namespace bp
