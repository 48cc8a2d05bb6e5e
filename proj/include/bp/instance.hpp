#pragma once

#include <string>
#include <vector>

#include "bp/belief.hpp"

namespace bp {

// A persuasion problem: states, actions, both parties' utilities, and the
// prior-knowledge floor p0 defining B0 = { mu : min_w mu(w) >= p0 }.
// Immutable after construction; construction validates all invariants.
class PersuasionInstance {
 public:
  PersuasionInstance(std::vector<std::string> states,
                     std::vector<std::string> actions,
                     Mat receiver_utility,  // rows = states, cols = actions
                     Mat sender_utility,    // same shape, entries in [0,1]
                     double prior_floor);

  int num_states() const { return static_cast<int>(states_.size()); }
  int num_actions() const { return static_cast<int>(actions_.size()); }
  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& actions() const { return actions_; }
  const Mat& receiver_utility() const { return u_; }
  const Mat& sender_utility() const { return v_; }
  double u(int state, int action) const { return u_(state, action); }
  double v(int state, int action) const { return v_(state, action); }
  double prior_floor() const { return p0_; }

  bool in_prior_knowledge_set(const Belief& mu) const;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> actions_;
  Mat u_;
  Mat v_;
  double p0_;
};

}  // namespace bp
