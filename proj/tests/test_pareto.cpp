#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "riskopt/fixtures.hpp"
#include "riskopt/pareto.hpp"
#include "test_util.hpp"

using namespace riskopt;

namespace {

DiscreteDistribution level_fixture() {
  return canonicalize({{0.5, 0.5}, {2.0, 0.25}, {3.0, 0.25}});
}

ParetoProblem es_problem(ContractFamily family) {
  return {level_fixture(), ExpectedShortfall{0.5}, ExpectedShortfall{0.5}, family,
          ExpectedValuePremium{}};
}

// coherent measures for randomized solver checks
RiskMeasure coherent_pool(FixtureGen& gen) {
  switch (gen.uniform_int(0, 4)) {
    case 0: return Mean{};
    case 1: return ExpectedShortfall{0.5};
    case 2: return ExpectedShortfall{0.9};
    case 3: return EsMeanMixture{0.5, 0.5};
    default:
      return DistortionMeasure{
          DistortionFunction::from_knots({{0.0, 0.0}, {0.5, 0.75}, {1.0, 1.0}})};
  }
}

ContractFamily family_pool(FixtureGen& gen) {
  switch (gen.uniform_int(0, 3)) {
    case 0: return ContractFamily::i0();
    case 1: return ContractFamily::i1();
    case 2: return ContractFamily::i2();
    default: return ContractFamily::i1d(gen.uniform_int(0, 1) == 0 ? 0.5 : 1.0);
  }
}

}  // namespace

TEST_SUITE("pareto") {
  TEST_CASE("objective on the documented fixtures") {
    const auto prob = es_problem(ContractFamily::i1d(1.0));
    CHECK(objective(prob, identity_contract()) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(objective(prob, deductible_limit(1.0, 1.0)) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(objective(prob, zero_contract()) == doctest::Approx(2.5).epsilon(1e-12));
    // zero cession and the direct deductible payoff are both minimizers
    CHECK(objective(prob, deductible_coinsurance(1.0, 1.0)) ==
          doctest::Approx(2.5).epsilon(1e-12));

    FixtureGen gen(1);
    for (int t = 0; t < 50; ++t) {
      const auto loss = gen.loss();
      ParetoProblem linear{loss, Mean{}, Mean{}, ContractFamily::i0(),
                           ExpectedValuePremium{}};
      const auto f = gen.contract(ContractFamily::i0(), loss.max_value() + 1.0);
      CHECK(objective(linear, f) == doctest::Approx(mean(loss)).epsilon(1e-12));
    }
  }

  TEST_CASE("solver refuses non-convex measures") {
    auto prob = es_problem(ContractFamily::i1());
    prob.insured = ValueAtRisk{0.5};
    CHECK_ERROR_KIND(solve(prob), ErrorKind::NonConvexMeasure);
    prob.insured = EsMeanMixture{0.5, -0.5};
    CHECK_ERROR_KIND(solve(prob), ErrorKind::NonConvexMeasure);
    prob.insured = LeftExpectedShortfall{0.5};
    CHECK_ERROR_KIND(solve(prob), ErrorKind::NonConvexMeasure);
    // still fine to evaluate the objective with them
    prob.insured = ValueAtRisk{0.5};
    CHECK(std::isfinite(objective(prob, zero_contract())));
  }

  TEST_CASE("oracle bounds and errors") {
    CHECK_ERROR_KIND(brute_force_oracle(es_problem(ContractFamily::i1()), 25),
                     ErrorKind::TooLarge);
    FixtureGen gen(2);
    std::vector<Atom> atoms;
    for (int i = 0; i < 6; ++i) atoms.push_back({0.5 * (i + 1), 1.0 / 6.0});
    ParetoProblem big{DiscreteDistribution::canonical(atoms), Mean{}, Mean{},
                      ContractFamily::i1(), ExpectedValuePremium{}};
    CHECK_ERROR_KIND(brute_force_oracle(big, 11), ErrorKind::TooLarge);
  }

  TEST_CASE("matched tail means make the whole deductible class optimal") {
    const auto prob = es_problem(ContractFamily::i1d(1.0));
    const auto result = solve(prob);
    CHECK(result.optimal_value == doctest::Approx(2.5).epsilon(1e-10));
    CHECK(family_feasible(prob.family, prob.loss, result.ceded_values, 1e-9));

    const auto oracle = brute_force_oracle(prob, 11);
    CHECK(oracle.optimal_value == doctest::Approx(2.5).epsilon(1e-10));
    // zero cession is among the minimizers and is lexicographically smallest
    for (double g : oracle.ceded_values) CHECK(g == 0.0);
  }

  TEST_CASE("full cession when the insured is much more risk averse") {
    ParetoProblem prob{canonicalize({{0.0, 0.5}, {10.0, 0.5}}), ExpectedShortfall{0.9},
                       Mean{}, ContractFamily::i2(), ExpectedValuePremium{}};
    const auto result = solve(prob);
    CHECK(result.optimal_value == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(result.ceded_values.back() == doctest::Approx(10.0).epsilon(1e-9));
  }

  TEST_CASE("point mass reduces to a one-dimensional scan") {
    ParetoProblem prob{point_mass(2.0), ExpectedShortfall{0.5}, Mean{},
                       ContractFamily::i0(), ExpectedValuePremium{}};
    const auto oracle = brute_force_oracle(prob, 10);
    // rho(2 - g) + psi(g) = 2 for every split of a constant
    CHECK(oracle.optimal_value == doctest::Approx(2.0).epsilon(1e-12));
  }

  TEST_CASE("solver tracks the oracle where the grid holds an exact optimum") {
    // Three instance classes place a continuous minimizer on the oracle grid:
    // matched measures (zero cession hits the subadditivity floor), a mean
    // insurer (full cession hits the mean), and a mean insured (zero cession
    // hits the mean). On those the comparison is two-sided.
    for (int t = 0; t < 25; ++t) {
      FixtureGen gen = FixtureGen::stream(2025, t);
      const auto loss = gen.loss(2, 4);
      ParetoProblem prob{loss, Mean{}, Mean{}, ContractFamily::i0(), ExpectedValuePremium{}};
      switch (t % 3) {
        case 0: {
          prob.insured = coherent_pool(gen);
          prob.insurer = prob.insured;
          prob.family = family_pool(gen);
          break;
        }
        case 1: {
          prob.insured = coherent_pool(gen);
          prob.insurer = Mean{};
          const ContractFamily choices[] = {ContractFamily::i0(), ContractFamily::i1(),
                                            ContractFamily::i2()};
          prob.family = choices[gen.uniform_int(0, 2)];
          break;
        }
        default: {
          prob.insured = Mean{};
          prob.insurer = coherent_pool(gen);
          prob.family = family_pool(gen);
          break;
        }
      }
      const auto result = solve(prob);
      const auto oracle = brute_force_oracle(prob, 11);
      const double tol = 1e-3 * (1.0 + std::abs(oracle.optimal_value));
      CHECK(result.optimal_value <= oracle.optimal_value + 1e-12);
      CHECK(result.optimal_value >= oracle.optimal_value - tol);
      CHECK(family_feasible(prob.family, loss, result.ceded_values, 1e-9));
    }
  }

  TEST_CASE("solver is never worse than the grid on arbitrary coherent pairs") {
    // With distinct tail-weighted measures the continuous optimum can sit
    // strictly between grid points, so only the upper bound is meaningful.
    for (int t = 0; t < 25; ++t) {
      FixtureGen gen = FixtureGen::stream(2026, t);
      const auto loss = gen.loss(2, 4);
      ParetoProblem prob{loss, coherent_pool(gen), coherent_pool(gen), family_pool(gen),
                         ExpectedValuePremium{}};
      const auto result = solve(prob);
      const auto oracle = brute_force_oracle(prob, 11);
      CHECK(result.optimal_value <= oracle.optimal_value + 1e-12);
      CHECK(family_feasible(prob.family, loss, result.ceded_values, 1e-9));
    }
  }

  TEST_CASE("subadditivity floor for matched coherent measures") {
    FixtureGen gen(31);
    for (int t = 0; t < 50; ++t) {
      const auto loss = gen.loss(2, 6);
      const RiskMeasure rho = ExpectedShortfall{0.75};
      ParetoProblem prob{loss, rho, rho, ContractFamily::i0(), ExpectedValuePremium{}};
      const double floor = evaluate(rho, loss);
      const auto f = gen.contract(ContractFamily::i0(), loss.max_value() + 1.0);
      CHECK(objective(prob, f) >= floor - 1e-10);
      const auto result = solve(prob, SolveSettings{.iterations = 2000});
      CHECK(result.optimal_value >= floor - 1e-10);
    }
  }

  TEST_CASE("pareto optimality over a candidate grid") {
    const auto prob = es_problem(ContractFamily::i1d(1.0));
    const auto grid = contract_grid(ContractFamily::i1d(1.0), 4.0);
    REQUIRE(grid.size() >= 5);

    const auto direct = deductible_coinsurance(1.0, 1.0);  // the full deductible payoff
    CHECK(is_pareto_optimal(prob, direct, grid).optimal);

    // a contract paying as much but costing the insured more: outside the
    // deductible class, strictly dominated under these measures
    ParetoProblem wide = prob;
    wide.family = ContractFamily::i1();
    const auto steep =
        CededLossFunction::from_knots({{0.0, 0.0}, {2.0, 0.0}, {3.0, 3.0}}, 0.0);
    auto candidates = grid;
    candidates.push_back(direct);
    const auto check = is_pareto_optimal(wide, steep, candidates);
    CHECK_FALSE(check.optimal);
    CHECK(check.dominator.has_value());

    const std::vector<CededLossFunction> singleton{steep};
    CHECK(is_pareto_optimal(wide, steep, singleton).optimal);
  }

  TEST_CASE("equivalence of the three efficiency statements") {
    const auto prob = es_problem(ContractFamily::i1d(1.0));
    const auto grid = contract_grid(ContractFamily::i1d(1.0), 4.0);
    const std::vector<PremiumRule> premiums{ExpectedValuePremium{0.0},
                                            ExpectedValuePremium{0.2}, InsurerPremium{}};
    for (const auto& f : grid) {
      CHECK(check_prop1_equivalence(prob, f, grid, premiums));
    }
    ParetoProblem wide = prob;
    wide.family = ContractFamily::i1();
    const auto steep =
        CededLossFunction::from_knots({{0.0, 0.0}, {2.0, 0.0}, {3.0, 3.0}}, 0.0);
    CHECK(check_prop1_equivalence(wide, steep, grid, premiums));

    const std::vector<CededLossFunction> singleton{steep};
    CHECK(check_prop1_equivalence(wide, steep, singleton, premiums));
  }

  TEST_CASE("premium independence of the efficient set") {
    FixtureGen gen(47);
    const std::vector<PremiumRule> premiums{ExpectedValuePremium{0.0},
                                            ExpectedValuePremium{0.35}, InsurerPremium{}};
    for (int t = 0; t < 20; ++t) {
      const auto loss = gen.loss(2, 6);
      ParetoProblem prob{loss, ExpectedShortfall{0.75}, ExpectedShortfall{0.5},
                         ContractFamily::i1(), ExpectedValuePremium{}};
      const auto grid = contract_grid(ContractFamily::i1(), loss.max_value() + 1.0);
      const auto base = argmin_set(prob, grid, false);
      for (const auto& rule : premiums) {
        ParetoProblem variant = prob;
        variant.premium = rule;
        CHECK(argmin_set(variant, grid, true) == base);
      }
    }
  }

  TEST_CASE("menus over loss bundles") {
    FixtureGen gen(53);
    const auto family = ContractFamily::i1d(1.0);
    const auto grid = contract_grid(family, 6.0);

    std::vector<DiscreteDistribution> matched;
    for (int i = 0; i < 4; ++i) matched.push_back(gen.loss_at_level(1.0, 0.5));
    const auto all = menu(matched, ExpectedShortfall{0.5}, grid);
    CHECK(all.size() == grid.size());

    const auto linear = menu(matched, Mean{}, contract_grid(ContractFamily::i0(), 6.0));
    CHECK(linear.size() == contract_grid(ContractFamily::i0(), 6.0).size());

    // a loss off the matched level knocks out part of the class
    auto mixed = matched;
    mixed.push_back(canonicalize({{0.5, 0.25}, {2.5, 0.25}, {3.0, 0.5}}));
    const auto fewer = menu(mixed, ExpectedShortfall{0.5}, grid);
    CHECK(fewer.size() < grid.size());
  }

  TEST_CASE("precedence inclusion") {
    FixtureGen gen(59);
    for (int t = 0; t < 20; ++t) {
      const auto loss = gen.loss(2, 6);
      const auto grid = contract_grid(ContractFamily::i1(), loss.max_value() + 1.0);
      CHECK(check_prop3_inclusion(loss, ExpectedShortfall{0.9}, ExpectedShortfall{0.5}, grid));
      CHECK(check_prop3_inclusion(loss, ExpectedShortfall{0.5}, ExpectedShortfall{0.5}, grid));
    }
    const auto loss = level_fixture();
    const auto grid = contract_grid(ContractFamily::i1(), 4.0);
    CHECK_ERROR_KIND(check_prop3_inclusion(loss, Mean{}, ExpectedShortfall{0.5}, grid),
                     ErrorKind::PrecedenceNotVerified);
  }

  TEST_CASE("reconstructed contracts stay feasible and reproduce the value") {
    FixtureGen gen(61);
    for (int t = 0; t < 30; ++t) {
      const auto loss = gen.loss(2, 4);
      const auto family = family_pool(gen);
      ParetoProblem prob{loss, coherent_pool(gen), coherent_pool(gen), family,
                         ExpectedValuePremium{}};
      const auto result = solve(prob, SolveSettings{.iterations = 1500});
      CHECK(family_feasible(family, loss, result.ceded_values, 1e-9));
      const auto f = to_contract(prob, result.ceded_values);
      CHECK(std::abs(objective(prob, f) - result.optimal_value) <= 1e-12);
      for (const Atom& a : loss.atoms()) {
        CHECK(f(a.value) >= 0.0);
      }
    }
  }
}
