#pragma once

#include <string>
#include <vector>

#include "bp/belief.hpp"
#include "bp/instance.hpp"

namespace bp {

// A row-stochastic map from states to signals plus a signal -> action
// decoding. "Straightforward" mechanisms use the action set itself as the
// signal set with the identity decode.
class SignalingMechanism {
 public:
  SignalingMechanism(std::vector<std::string> signals,
                     Mat kernel,                 // rows = states, cols = signals
                     std::vector<int> decode);   // signal index -> action index

  // Signals identical to the instance's actions, identity decode.
  static SignalingMechanism straightforward(const PersuasionInstance& inst, Mat kernel);

  int num_states() const { return static_cast<int>(kernel_.rows()); }
  int num_signals() const { return static_cast<int>(kernel_.cols()); }
  const std::vector<std::string>& signals() const { return signals_; }
  const Mat& kernel() const { return kernel_; }
  double prob(int state, int signal) const { return kernel_(state, signal); }
  int decode(int signal) const { return decode_[signal]; }
  const std::vector<int>& decode_map() const { return decode_; }
  bool is_straightforward() const;

  // P(signal) under prior mu.
  double marginal(const Belief& mu, int signal) const;

  // Merge signals that decode to the same action by summing kernel columns.
  // Obedience slacks are additive over merged signals, so a mechanism that
  // was persuasive stays persuasive. Result is straightforward over the
  // instance's action set (actions never recommended get zero columns).
  SignalingMechanism coalesce(const PersuasionInstance& inst) const;

 private:
  std::vector<std::string> signals_;
  Mat kernel_;
  std::vector<int> decode_;
};

}  // namespace bp
