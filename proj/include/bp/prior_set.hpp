#pragma once

#include <map>

#include "bp/belief.hpp"
#include "bp/errors.hpp"

namespace bp {

// The candidate prior set B1(center, radius) intersected with the simplex:
// { mu in simplex : ||mu - center||_1 <= radius }. radius >= 2 covers the
// whole simplex.
struct CandidatePriorSet {
  Belief center;
  double radius = 0.0;

  CandidatePriorSet(Belief c, double r) : center(std::move(c)), radius(r) {
    if (!(r >= 0.0)) throw ValidationError("candidate prior set: negative radius");
  }

  bool contains(const Belief& mu) const {
    return l1_distance(mu, center) <= radius + kSimplexSumTol;
  }
};

// Certificate that every receiver best-response region P_a contains an
// l1-ball (taken within the simplex's affine hull) of radius D centered at
// the anchor eta_a. radii keeps the per-action inscribed radius; D is their
// minimum.
struct RegularityCertificate {
  double D = 0.0;
  std::map<int, Belief> anchors;  // action index -> eta_a
  std::map<int, double> radii;    // action index -> r_a
};

}  // namespace bp
