#include <cmath>

#include "doctest.h"
#include "riskopt/dependence.hpp"
#include "riskopt/contracts.hpp"
#include "riskopt/fixtures.hpp"
#include "test_util.hpp"

using namespace riskopt;

namespace {

JointSample antithetic() {
  return JointSample::from_atoms({{0.0, 1.0, 0.5}, {1.0, 0.0, 0.5}});
}

JointSample swapped(const JointSample& joint) {
  std::vector<JointAtom> atoms;
  for (const auto& a : joint.atoms()) atoms.push_back({a.y, a.x, a.prob});
  return JointSample::from_atoms(std::move(atoms));
}

}  // namespace

TEST_SUITE("dependence") {
  TEST_CASE("comonotonicity basics") {
    CHECK_FALSE(is_comonotonic(antithetic()).comonotonic);
    CHECK(is_comonotonic(antithetic()).witness.has_value());

    const auto degenerate =
        JointSample::from_atoms({{0.0, 2.0, 0.5}, {1.0, 2.0, 0.25}, {3.0, 2.0, 0.25}});
    CHECK(is_comonotonic(degenerate).comonotonic);

    FixtureGen gen(3);
    for (int t = 0; t < 100; ++t) {
      const auto loss = gen.loss();
      const auto f = gen.contract(ContractFamily::i2(), loss.max_value() + 1.0);
      const auto joint = split_joint(f, loss);
      CHECK(is_comonotonic(joint).comonotonic);
      CHECK(is_comonotonic(swapped(joint)).comonotonic);
    }
  }

  TEST_CASE("comonotonicity is symmetric in the coordinates") {
    FixtureGen gen(5);
    for (int t = 0; t < 100; ++t) {
      const auto loss = gen.loss(2, 5);
      const auto f = gen.contract(ContractFamily::i0(), loss.max_value() + 1.0);
      const auto joint = split_joint(f, loss);
      CHECK(is_comonotonic(joint).comonotonic == is_comonotonic(swapped(joint)).comonotonic);
    }
  }

  TEST_CASE("common tail event for the deductible split fixture") {
    const auto loss = canonicalize({{0.5, 0.5}, {2.0, 0.25}, {3.0, 0.25}});
    const auto f = deductible_limit(1.0, 1.0);
    const auto joint = split_joint(f, loss);
    const auto report = find_common_p_tail(joint, 0.5);
    REQUIRE(report.exists);
    CHECK(report.level == 0.5);
    // the found event is exactly the atoms with loss above the deductible
    double mass = 0.0;
    for (std::size_t idx : report.event) {
      mass += joint.atoms()[idx].prob;
      CHECK(joint.atoms()[idx].x + joint.atoms()[idx].y > 1.0);
    }
    CHECK(mass == doctest::Approx(0.5).epsilon(1e-15));
  }

  TEST_CASE("comonotonic pairs admit tail events at every achievable level") {
    FixtureGen gen(9);
    for (int t = 0; t < 50; ++t) {
      const auto loss = gen.loss(2, 6);
      const auto f = gen.contract(ContractFamily::i2(), loss.max_value() + 1.0);
      const auto joint = split_joint(f, loss);
      double cum = 0.0;
      for (std::size_t i = 0; i + 1 < joint.size(); ++i) {
        cum += joint.atoms()[i].prob;
        const double p = cum;  // achievable: complement of a prefix in loss order
        if (p <= 0.0 || p >= 1.0) continue;
        CHECK(find_common_p_tail(joint, p).exists);
      }
    }
  }

  TEST_CASE("antithetic pair has no common tail event") {
    const auto report = find_common_p_tail(antithetic(), 0.5);
    CHECK_FALSE(report.exists);
    CHECK(report.event.empty());
  }

  TEST_CASE("infeasible masses are refused") {
    CHECK_ERROR_KIND(find_common_p_tail(antithetic(), 0.3), ErrorKind::InfeasibleMass);
    CHECK_ERROR_KIND(find_common_p_tail(antithetic(), 0.0), ErrorKind::InvalidLevel);
    CHECK_ERROR_KIND(find_common_p_tail(antithetic(), 1.0), ErrorKind::InvalidLevel);
  }

  TEST_CASE("tail events split tied boundary atoms when the mass requires it") {
    // two atoms tie on the first coordinate; only one of them has the mass
    // and second-coordinate value that completes the event
    const auto joint = JointSample::from_atoms(
        {{2.0, 1.0, 0.25}, {2.0, 3.0, 0.25}, {1.0, 0.5, 0.5}});
    const auto report = find_common_p_tail(joint, 0.75);
    REQUIRE(report.exists);
    REQUIRE(report.event.size() == 1);
    CHECK(joint.atoms()[report.event[0]].y == 3.0);
  }

  TEST_CASE("product embedding") {
    const auto single = product_embed(point_mass(1.0), 0.5);
    REQUIRE(single.size() == 2);
    CHECK(single.atoms()[0].x == 1.0);
    CHECK(single.atoms()[0].y == 1.0);
    CHECK(single.atoms()[0].prob == 0.5);
    CHECK(single.atoms()[1].x == 0.0);
    CHECK(single.atoms()[1].y == 0.0);

    const auto joint = product_embed(canonicalize({{0.0, 0.5}, {2.0, 0.5}}), 0.5);
    CHECK(joint.size() == 4);
    const auto marginal = first_marginal(joint);
    REQUIRE(marginal.size() == 2);
    CHECK(marginal.atoms()[0].prob == 0.75);
    CHECK(marginal.atoms()[1].prob == 0.25);

    FixtureGen gen(13);
    for (int t = 0; t < 50; ++t) {
      const auto loss = gen.loss();
      const double q = gen.dyadic_level();
      const auto embedded = product_embed(loss, q);
      CHECK(mean(first_marginal(embedded)) ==
            doctest::Approx(q * mean(loss)).epsilon(1e-12));
    }
    CHECK_ERROR_KIND(product_embed(point_mass(1.0), 0.0), ErrorKind::InvalidLevel);
  }
}
