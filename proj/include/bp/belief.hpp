#pragma once

#include <Eigen/Dense>

namespace bp {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Tolerance policy, shared project-wide.
// Simplex membership: sums within kSimplexSumTol of 1; entries may carry
// LP round-off as small negatives down to kNegativeClamp, which are
// clamped to zero on construction. Anything below that is rejected.
inline constexpr double kSimplexSumTol = 1e-9;
inline constexpr double kNegativeClamp = -1e-12;
// Obedience slack threshold for "persuasive", in the unnormalized form
// sum_w mu(w) sigma(w,a) (u(w,a) - u(w,a')) >= -kPersuasiveTol.
inline constexpr double kPersuasiveTol = 1e-7;

// A point of the probability simplex over states. Immutable.
class Belief {
 public:
  explicit Belief(Vec weights);
  static Belief point_mass(int dim, int state);
  static Belief uniform(int dim);

  const Vec& weights() const { return w_; }
  int size() const { return static_cast<int>(w_.size()); }
  double operator[](int i) const { return w_(i); }
  double min_weight() const { return w_.minCoeff(); }

 private:
  Vec w_;
};

// sum_w |x(w) - y(w)|. Throws ValidationError on dimension mismatch.
double l1_distance(const Belief& x, const Belief& y);

}  // namespace bp
