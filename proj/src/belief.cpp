#include "bp/belief.hpp"

#include <cmath>
#include <string>

#include "bp/errors.hpp"

namespace bp {

Belief::Belief(Vec weights) : w_(std::move(weights)) {
  if (w_.size() < 1) throw ValidationError("belief: empty weight vector");
  for (Eigen::Index i = 0; i < w_.size(); ++i) {
    double v = w_(i);
    if (!std::isfinite(v)) throw ValidationError("belief: non-finite weight");
    if (v < 0.0) {
      if (v < kNegativeClamp)
        throw ValidationError("belief: weight " + std::to_string(v) +
                              " at index " + std::to_string(i) +
                              " below clamp tolerance");
      w_(i) = 0.0;
    }
  }
  double s = w_.sum();
  if (std::abs(s - 1.0) > kSimplexSumTol)
    throw ValidationError("belief: weights sum to " + std::to_string(s) +
                          ", not 1 within 1e-9");
}

Belief Belief::point_mass(int dim, int state) {
  if (state < 0 || state >= dim) throw ValidationError("belief: point mass index out of range");
  Vec w = Vec::Zero(dim);
  w(state) = 1.0;
  return Belief(std::move(w));
}

Belief Belief::uniform(int dim) {
  if (dim < 1) throw ValidationError("belief: uniform over empty set");
  return Belief(Vec::Constant(dim, 1.0 / dim));
}

double l1_distance(const Belief& x, const Belief& y) {
  if (x.size() != y.size()) throw ValidationError("l1_distance: dimension mismatch");
  return (x.weights() - y.weights()).cwiseAbs().sum();
}

}  // namespace bp
