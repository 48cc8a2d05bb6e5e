#include "bp/instance.hpp"

#include <cmath>
#include <set>
#include <string>

#include "bp/errors.hpp"

namespace bp {

namespace {
void check_labels(const std::vector<std::string>& labels, const char* kind) {
  std::set<std::string> seen;
  for (const auto& s : labels) {
    if (s.empty()) throw ValidationError(std::string(kind) + ": empty label");
    if (!seen.insert(s).second)
      throw ValidationError(std::string(kind) + ": duplicate label '" + s + "'");
  }
}
}  // namespace

PersuasionInstance::PersuasionInstance(std::vector<std::string> states,
                                       std::vector<std::string> actions,
                                       Mat receiver_utility, Mat sender_utility,
                                       double prior_floor)
    : states_(std::move(states)),
      actions_(std::move(actions)),
      u_(std::move(receiver_utility)),
      v_(std::move(sender_utility)),
      p0_(prior_floor) {
  const auto n = static_cast<Eigen::Index>(states_.size());
  const auto m = static_cast<Eigen::Index>(actions_.size());
  if (n < 2) throw ValidationError("instance: need at least 2 states");
  if (m < 2) throw ValidationError("instance: need at least 2 actions");
  check_labels(states_, "states");
  check_labels(actions_, "actions");
  if (u_.rows() != n || u_.cols() != m)
    throw ValidationError("instance: receiver utility shape mismatch");
  if (v_.rows() != n || v_.cols() != m)
    throw ValidationError("instance: sender utility shape mismatch");
  for (Eigen::Index w = 0; w < n; ++w)
    for (Eigen::Index a = 0; a < m; ++a) {
      if (!std::isfinite(u_(w, a)))
        throw ValidationError("instance: non-finite receiver utility at (" +
                              states_[w] + ", " + actions_[a] + ")");
      if (!std::isfinite(v_(w, a)) || v_(w, a) < 0.0 || v_(w, a) > 1.0)
        throw ValidationError("instance: sender utility out of [0,1] at (" +
                              states_[w] + ", " + actions_[a] + ")");
    }
  if (!(p0_ > 0.0) || p0_ > 1.0 / static_cast<double>(n) + 1e-15)
    throw ValidationError("instance: prior_floor must lie in (0, 1/|states|]");
}

bool PersuasionInstance::in_prior_knowledge_set(const Belief& mu) const {
  if (mu.size() != num_states()) return false;
  return mu.min_weight() >= p0_ - kSimplexSumTol;
}

}  // namespace bp
