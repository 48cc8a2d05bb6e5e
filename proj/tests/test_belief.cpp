#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bp/belief.hpp"
#include "bp/errors.hpp"
#include "bp/rng.hpp"

using namespace bp;

namespace {

Belief random_belief(Philox& rng, int dim) {
  Vec w(dim);
  for (int i = 0; i < dim; ++i) w[i] = -std::log(1.0 - rng.uniform());
  w /= w.sum();
  return Belief(w);
}

}  // namespace

TEST_CASE("belief construction accepts simplex points and clamps LP round-off") {
  Vec w(3);
  w << 0.2, 0.3, 0.5;
  Belief b(w);
  CHECK(b.size() == 3);
  CHECK(b[0] == 0.2);
  CHECK(b.min_weight() == 0.2);

  // A tiny negative within the clamp window becomes exactly zero.
  Vec noisy(2);
  noisy << 1.0 + 5e-13, -5e-13;
  Belief clamped(noisy);
  CHECK(clamped[1] == 0.0);
}

TEST_CASE("belief construction rejects off-simplex vectors loudly") {
  Vec short_sum(2);
  short_sum << 0.5, 0.4;
  CHECK_THROWS_AS(Belief{short_sum}, ValidationError);

  Vec too_negative(2);
  too_negative << 1.0 + 1e-6, -1e-6;
  CHECK_THROWS_AS(Belief{too_negative}, ValidationError);

  Vec nan(2);
  nan << 0.5, std::nan("");
  CHECK_THROWS_AS(Belief{nan}, ValidationError);

  CHECK_THROWS_AS(Belief{Vec()}, ValidationError);
}

TEST_CASE("point_mass and uniform") {
  Belief p = Belief::point_mass(4, 2);
  CHECK(p[2] == 1.0);
  CHECK(p[0] == 0.0);
  CHECK_THROWS_AS(Belief::point_mass(4, 4), ValidationError);
  CHECK_THROWS_AS(Belief::point_mass(4, -1), ValidationError);

  Belief u = Belief::uniform(5);
  for (int i = 0; i < 5; ++i) CHECK(u[i] == doctest::Approx(0.2));
  CHECK_THROWS_AS(Belief::uniform(0), ValidationError);
}

TEST_CASE("l1_distance basics") {
  Belief a = Belief::point_mass(3, 0);
  Belief b = Belief::point_mass(3, 1);
  CHECK(l1_distance(a, b) == doctest::Approx(2.0));
  CHECK(l1_distance(a, a) == 0.0);
  CHECK_THROWS_AS(l1_distance(a, Belief::uniform(2)), ValidationError);
}

TEST_CASE("l1_distance satisfies the triangle inequality on random triples") {
  Philox rng(17, 0);
  for (int trial = 0; trial < 200; ++trial) {
    int dim = 2 + static_cast<int>(rng.uniform() * 5);
    Belief x = random_belief(rng, dim);
    Belief y = random_belief(rng, dim);
    Belief z = random_belief(rng, dim);
    CHECK(l1_distance(x, z) <= l1_distance(x, y) + l1_distance(y, z) + 1e-12);
    CHECK(l1_distance(x, y) == doctest::Approx(l1_distance(y, x)));
    // Two simplex points are never more than 2 apart.
    CHECK(l1_distance(x, y) <= 2.0 + 1e-12);
  }
}
