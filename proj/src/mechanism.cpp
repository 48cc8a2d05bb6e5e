#include "bp/mechanism.hpp"

#include <cmath>
#include <set>
#include <string>

#include "bp/errors.hpp"

namespace bp {

SignalingMechanism::SignalingMechanism(std::vector<std::string> signals, Mat kernel,
                                       std::vector<int> decode)
    : signals_(std::move(signals)), kernel_(std::move(kernel)), decode_(std::move(decode)) {
  const Eigen::Index n = kernel_.rows();
  const Eigen::Index s = kernel_.cols();
  if (n < 1 || s < 1) throw ValidationError("mechanism: empty kernel");
  if (static_cast<Eigen::Index>(signals_.size()) != s)
    throw ValidationError("mechanism: signal label count does not match kernel");
  if (static_cast<Eigen::Index>(decode_.size()) != s)
    throw ValidationError("mechanism: decode size does not match signal count");
  {
    std::set<std::string> seen;
    for (const auto& lbl : signals_)
      if (!seen.insert(lbl).second)
        throw ValidationError("mechanism: duplicate signal label '" + lbl + "'");
  }
  for (Eigen::Index w = 0; w < n; ++w) {
    double row_sum = 0.0;
    for (Eigen::Index j = 0; j < s; ++j) {
      double p = kernel_(w, j);
      if (!std::isfinite(p)) throw ValidationError("mechanism: non-finite kernel entry");
      if (p < 0.0) {
        if (p < kNegativeClamp)
          throw ValidationError("mechanism: kernel entry " + std::to_string(p) +
                                " below clamp tolerance");
        kernel_(w, j) = 0.0;
        p = 0.0;
      }
      row_sum += p;
    }
    if (std::abs(row_sum - 1.0) > kSimplexSumTol)
      throw ValidationError("mechanism: kernel row " + std::to_string(w) +
                            " sums to " + std::to_string(row_sum));
  }
}

SignalingMechanism SignalingMechanism::straightforward(const PersuasionInstance& inst,
                                                       Mat kernel) {
  if (kernel.cols() != inst.num_actions() || kernel.rows() != inst.num_states())
    throw ValidationError("mechanism: straightforward kernel must be states x actions");
  std::vector<int> decode(inst.num_actions());
  for (int a = 0; a < inst.num_actions(); ++a) decode[a] = a;
  return SignalingMechanism(inst.actions(), std::move(kernel), std::move(decode));
}

bool SignalingMechanism::is_straightforward() const {
  for (int j = 0; j < num_signals(); ++j)
    if (decode_[j] != j) return false;
  return true;
}

double SignalingMechanism::marginal(const Belief& mu, int signal) const {
  if (mu.size() != num_states()) throw ValidationError("mechanism: prior dimension mismatch");
  return mu.weights().dot(kernel_.col(signal));
}

SignalingMechanism SignalingMechanism::coalesce(const PersuasionInstance& inst) const {
  if (num_states() != inst.num_states())
    throw ValidationError("mechanism: instance state count mismatch");
  Mat merged = Mat::Zero(num_states(), inst.num_actions());
  for (int j = 0; j < num_signals(); ++j) {
    int a = decode_[j];
    if (a < 0 || a >= inst.num_actions())
      throw ValidationError("mechanism: decode target out of range");
    merged.col(a) += kernel_.col(j);
  }
  return straightforward(inst, std::move(merged));
}

}  // namespace bp
