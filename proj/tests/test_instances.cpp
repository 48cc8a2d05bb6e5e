#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <vector>

#include "bp/errors.hpp"
#include "bp/instances.hpp"
#include "bp/persuasion.hpp"

using namespace bp;

TEST_CASE("lower-bound instance: shape, symmetry, and scoring actions") {
  const double D = 0.01, p0 = 0.1;
  auto [inst, mu] = build_instance_I0(D, p0);
  CHECK(inst.num_states() == 3);
  CHECK(inst.num_actions() == 5);
  CHECK(inst.prior_floor() == p0);
  CHECK(mu[0] == doctest::Approx(p0));
  CHECK(mu[1] == doctest::Approx((1.0 - p0) / 2.0));
  CHECK(inst.in_prior_knowledge_set(mu));

  // a0 is the outside option; the sender scores 1 exactly on a1 and a2.
  for (int w = 0; w < 3; ++w) {
    CHECK(inst.u(w, 0) == 0.0);
    CHECK(inst.v(w, 0) == 0.0);
    CHECK(inst.v(w, 1) == 1.0);
    CHECK(inst.v(w, 2) == 1.0);
    CHECK(inst.v(w, 3) == 0.0);
    CHECK(inst.v(w, 4) == 0.0);
  }

  // w1 and w2 mirror each other under the swaps a1<->a2, a3<->a4.
  CHECK(inst.u(1, 1) == inst.u(2, 2));
  CHECK(inst.u(1, 2) == inst.u(2, 1));
  CHECK(inst.u(1, 3) == inst.u(2, 4));
  CHECK(inst.u(1, 4) == inst.u(2, 3));
  CHECK(inst.u(0, 1) == inst.u(0, 2));
  CHECK(inst.u(0, 3) == inst.u(0, 4));
  CHECK(inst.u(0, 1) == doctest::Approx(2.0 * D * D));
}

TEST_CASE("lower-bound instance: parameter domain") {
  CHECK_THROWS_AS(build_instance_I0(0.5, 0.2), ValidationError);    // D*p0 >= 1/64
  CHECK_THROWS_AS(build_instance_I0(-0.01, 0.1), ValidationError);
  CHECK_THROWS_AS(build_instance_I0(0.01, 0.0), ValidationError);
  CHECK_THROWS_AS(build_instance_I0(0.01, 0.4), ValidationError);   // p0 > 1/3
}

TEST_CASE("lower-bound instance: the worst-case prior extracts full value") {
  for (auto [D, p0] : {std::pair{0.01, 0.1}, std::pair{0.05, 0.15}}) {
    auto [inst, mu] = build_instance_I0(D, p0);
    OptResult res = solve_opt(inst, mu);
    CHECK(res.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(is_persuasive(inst, mu, res.mechanism).persuasive);
  }
}

TEST_CASE("lower-bound instance: measured regularity equals the construction D") {
  for (auto [D, p0] : {std::pair{0.01, 0.1}, std::pair{0.05, 0.15}}) {
    auto [inst, mu] = build_instance_I0(D, p0);
    RegularityCertificate cert = estimate_regularity(inst);
    CHECK(cert.D == doctest::Approx(D).epsilon(1e-9));
    // Every anchor certifies its action as a best response.
    for (const auto& [a, eta] : cert.anchors) {
      std::vector<int> br = best_responses(inst, eta);
      CHECK(std::find(br.begin(), br.end(), a) != br.end());
    }
  }
}

TEST_CASE("lower-bound instance: full information earns only the floor mass") {
  auto [inst, mu] = build_instance_I0(0.05, 0.15);
  // Only the first state's point mass best-responds to a scoring action.
  CHECK(value(inst, mu, full_information_mechanism(inst)) == doctest::Approx(0.15).epsilon(1e-12));
}

TEST_CASE("perturbed prior pair stays in the knowledge set and brackets the center") {
  auto [inst, mu] = build_instance_I0(0.01, 0.1);
  auto [up, down] = build_lower_bound_priors(mu, 0.005);
  CHECK(inst.in_prior_knowledge_set(up));
  CHECK(inst.in_prior_knowledge_set(down));
  CHECK(up[0] == mu[0]);
  CHECK(l1_distance(up, mu) == doctest::Approx(0.005));
  CHECK(l1_distance(down, mu) == doctest::Approx(0.005));
  CHECK(l1_distance(up, down) == doctest::Approx(0.01));

  CHECK_THROWS_AS(build_lower_bound_priors(mu, 0.0), ValidationError);
  CHECK_THROWS_AS(build_lower_bound_priors(mu, 0.7), ValidationError);  // exceeds 1 - 3*p0
  CHECK_THROWS_AS(build_lower_bound_priors(Belief::uniform(2), 0.005), ValidationError);
}

TEST_CASE("random regular instances: reproducible, bounded, certified") {
  PersuasionInstance a = random_regular_instance(77, 3, 4, 0.05);
  PersuasionInstance b = random_regular_instance(77, 3, 4, 0.05);
  CHECK((a.receiver_utility() - b.receiver_utility()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.sender_utility() - b.sender_utility()).cwiseAbs().maxCoeff() == 0.0);

  PersuasionInstance c = random_regular_instance(78, 3, 4, 0.05);
  CHECK((a.receiver_utility() - c.receiver_utility()).cwiseAbs().maxCoeff() > 0.0);

  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    PersuasionInstance inst = random_regular_instance(seed, 3, 5, 0.05, 0.03);
    CHECK(inst.receiver_utility().cwiseAbs().maxCoeff() <= 1.0 + 1e-12);
    CHECK(inst.sender_utility().minCoeff() >= 0.0);
    CHECK(inst.sender_utility().maxCoeff() <= 1.0);
    CHECK(estimate_regularity(inst).D >= 0.03);
  }

  CHECK_THROWS_AS(random_regular_instance(1, 1, 4, 0.05), ValidationError);
  CHECK_THROWS_AS(random_regular_instance(1, 3, 1, 0.05), ValidationError);
  // An unreachable inscribed-radius floor exhausts the attempt budget.
  CHECK_THROWS_AS(random_regular_instance(1, 3, 4, 0.05, 1.5, 10), DomainError);
}

TEST_CASE("two-state example fixture") {
  auto [inst, mu] = build_two_state_example();
  CHECK(inst.states()[0] == "innocent");
  CHECK(inst.actions()[1] == "convict");
  CHECK(mu[1] == doctest::Approx(0.3));
  CHECK(inst.prior_floor() == doctest::Approx(0.1));
  CHECK(solve_opt(inst, mu).value == doctest::Approx(0.6));
}
