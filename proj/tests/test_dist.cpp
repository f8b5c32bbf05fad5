#include <cmath>

#include "doctest.h"
#include "riskopt/dist.hpp"
#include "riskopt/fixtures.hpp"
#include "test_util.hpp"

using namespace riskopt;

namespace {

DiscreteDistribution two_point() {
  return canonicalize({{0.0, 0.5}, {1.0, 0.5}});
}

// Reference for the tail mean: numerical integral of the quantile over a
// 10^6-point midpoint grid on (level, 1). Independent of the fractional-atom
// path under test.
double es_by_quantile_integral(const DiscreteDistribution& dist, double level) {
  constexpr int kPoints = 1'000'000;
  const double width = (1.0 - level) / kPoints;
  double acc = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    acc += var(dist, level + (i + 0.5) * width);
  }
  return acc / kPoints;
}

}  // namespace

TEST_SUITE("dist") {
  TEST_CASE("canonicalize merges, sorts, and drops zero mass") {
    const auto merged = canonicalize({{1.0, 0.5}, {1.0, 0.25}, {0.0, 0.25}});
    REQUIRE(merged.size() == 2);
    CHECK(merged.atoms()[0].value == 0.0);
    CHECK(merged.atoms()[0].prob == 0.25);
    CHECK(merged.atoms()[1].value == 1.0);
    CHECK(merged.atoms()[1].prob == 0.75);

    const auto untouched = canonicalize({{0.0, 0.5}, {1.0, 0.5}});
    CHECK(untouched.atoms()[0].prob == 0.5);
    CHECK(untouched.atoms()[1].prob == 0.5);

    const auto dropped = canonicalize({{3.0, 1.0}, {2.0, 0.0}});
    REQUIRE(dropped.size() == 1);
    CHECK(dropped.atoms()[0].value == 3.0);
    CHECK(dropped.atoms()[0].prob == 1.0);
  }

  TEST_CASE("canonicalize rejects bad mass") {
    CHECK_ERROR_KIND(canonicalize({{0.0, -0.1}, {1.0, 1.1}}), ErrorKind::NegativeProbability);
    CHECK_ERROR_KIND(canonicalize({{0.0, 0.5}, {1.0, 0.4}}),
                     ErrorKind::ProbabilityMassMismatch);
    CHECK_ERROR_KIND(canonicalize({}), ErrorKind::ProbabilityMassMismatch);
    CHECK_ERROR_KIND(canonicalize({{std::nan(""), 1.0}}), ErrorKind::NonFiniteValue);
  }

  TEST_CASE("left quantile convention at exact mass levels") {
    CHECK(var(two_point(), 0.5) == 0.0);
    CHECK(var(two_point(), 0.5 + 1e-12) == 1.0);
    CHECK(var(point_mass(3.25), 0.1) == 3.25);
    CHECK(var(point_mass(3.25), 0.9) == 3.25);

    const auto three = canonicalize({{0.0, 0.25}, {2.0, 0.25}, {5.0, 0.5}});
    CHECK(var(three, 0.6) == 5.0);
    CHECK(var(three, 0.5) == 2.0);

    CHECK_ERROR_KIND(var(two_point(), 0.0), ErrorKind::InvalidLevel);
    CHECK_ERROR_KIND(var(two_point(), 1.0), ErrorKind::InvalidLevel);
  }

  TEST_CASE("tail mean on frozen fixtures") {
    CHECK(es(two_point(), 0.25) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(es(point_mass(4.0), 0.7) == 4.0);

    const auto quarters =
        canonicalize({{0.0, 0.25}, {1.0, 0.25}, {2.0, 0.25}, {3.0, 0.25}});
    CHECK(es(quarters, 0.5) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(left_es(quarters, 0.5) == doctest::Approx(0.5).epsilon(1e-12));

    CHECK(left_es(two_point(), 0.5) == 0.0);
    CHECK(left_es(point_mass(-2.0), 0.3) == -2.0);

    CHECK_ERROR_KIND(es(two_point(), 1.0), ErrorKind::InvalidLevel);
    CHECK_ERROR_KIND(es(two_point(), -0.1), ErrorKind::InvalidLevel);
    CHECK_ERROR_KIND(left_es(two_point(), 0.0), ErrorKind::InvalidLevel);
  }

  TEST_CASE("transform, shift, scale") {
    CHECK(mean(two_point()) == 0.5);

    const auto capped =
        transform(canonicalize({{0.0, 0.5}, {2.0, 0.5}}), [](double x) { return std::min(x, 1.0); });
    CHECK(capped.atoms()[1].value == 1.0);

    const auto moved = shift(two_point(), 3.0);
    CHECK(moved.atoms()[0].value == 3.0);
    CHECK(moved.atoms()[1].value == 4.0);

    const auto doubled = scale(two_point(), 2.0);
    CHECK(doubled.atoms()[1].value == 2.0);
    CHECK(scale(two_point(), 0.0).size() == 1);
    CHECK_ERROR_KIND(scale(two_point(), -1.0), ErrorKind::NegativeScale);
  }

  TEST_CASE("membership classification") {
    const auto fixture = canonicalize({{0.5, 0.5}, {2.0, 0.25}, {3.0, 0.25}});
    const auto report = membership_class(fixture, 1.0);
    CHECK(report.nonnegative);
    CHECK(report.level == 0.5);
    CHECK(report.in_deductible_level_set);
    CHECK(report.in_level_set);

    const auto degenerate = membership_class(point_mass(1.0), 1.0);
    CHECK(degenerate.level == 1.0);

    const auto signed_loss = membership_class(canonicalize({{-1.0, 0.5}, {2.0, 0.5}}), 0.0);
    CHECK_FALSE(signed_loss.nonnegative);
    CHECK_FALSE(signed_loss.in_deductible_level_set);
    CHECK(signed_loss.level == 0.5);
    CHECK(signed_loss.in_level_set);
  }

  TEST_CASE("mean split identity and tail monotonicity") {
    FixtureGen gen(2024);
    for (int t = 0; t < 200; ++t) {
      const auto loss = gen.loss();
      const double p = gen.dyadic_level();
      CHECK(std::abs((1.0 - p) * es(loss, p) + p * left_es(loss, p) - mean(loss)) <= 1e-12);
      CHECK(es(loss, 0.0) == doctest::Approx(mean(loss)).epsilon(1e-12));
      if (loss.size() > 1) {
        CHECK(left_es(loss, p) <= var(loss, p));
        CHECK(var(loss, p) <= es(loss, p));
      }
      const double q = std::min(p + 1.0 / 16.0, 15.0 / 16.0);
      CHECK(es(loss, q) >= es(loss, p) - 1e-12);
      CHECK(var(loss, q) >= var(loss, p));
    }
  }

  TEST_CASE("translation and scaling equivariance of the tail mean") {
    FixtureGen gen(77);
    for (int t = 0; t < 100; ++t) {
      const auto loss = gen.loss();
      const double p = gen.dyadic_level();
      CHECK(std::abs(es(shift(loss, 1.75), p) - es(loss, p) - 1.75) <= 1e-12);
      CHECK(std::abs(es(scale(loss, 1.5), p) - 1.5 * es(loss, p)) <= 1e-12);
    }
  }

  TEST_CASE("tail mean matches the quantile integral") {
    FixtureGen gen(11);
    for (int t = 0; t < 8; ++t) {
      const auto loss = gen.loss();
      const double p = gen.dyadic_level();
      CHECK(std::abs(es(loss, p) - es_by_quantile_integral(loss, p)) <= 1e-5);
    }
  }

  TEST_CASE("joint samples validate and marginalize") {
    CHECK_ERROR_KIND(JointSample::from_atoms({{0.0, 1.0, 0.5}, {1.0, 0.0, 0.4}}),
                     ErrorKind::ProbabilityMassMismatch);
    CHECK_ERROR_KIND(JointSample::from_atoms({{0.0, 1.0, 1.0}, {1.0, 0.0, 0.0}}),
                     ErrorKind::NegativeProbability);

    const auto joint =
        JointSample::from_atoms({{0.0, 1.0, 0.25}, {1.0, 0.0, 0.25}, {1.0, 2.0, 0.5}});
    const auto first = first_marginal(joint);
    CHECK(first.atoms()[0].prob == 0.25);
    CHECK(first.atoms()[1].prob == 0.75);
    const auto sum = combine(joint, [](double x, double y) { return x + y; });
    CHECK(mean(sum) == doctest::Approx(mean(first) + mean(second_marginal(joint))));
  }
}
