#ifndef RISKOPT_FIXTURES_HPP
#define RISKOPT_FIXTURES_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "riskopt/contracts.hpp"
#include "riskopt/dist.hpp"

namespace riskopt {

/// Deterministic fixture generator for randomized checks. Everything it
/// produces is exactly representable: support values are multiples of 1/4 in
/// [0,5], probabilities are multiples of 1/16, contract slopes are multiples
/// of 1/8. Class membership and the additivity identities then hold in exact
/// double arithmetic, so equality checks need no slack beyond the stated
/// tolerances.
class FixtureGen {
 public:
  explicit FixtureGen(std::uint64_t seed);

  /// Independent generator for a named stream; the (seed, stream) pair fully
  /// determines the output, so trials can run in any order or in parallel.
  static FixtureGen stream(std::uint64_t seed, std::uint64_t stream);

  int uniform_int(int lo, int hi);
  double pick(const std::vector<double>& values);

  /// k positive dyadic probabilities (denominator 16) summing to one.
  std::vector<double> dyadic_probs(int count);

  /// A dyadic level strictly inside (0,1).
  double dyadic_level();

  /// Random nonnegative loss with the given support-size range.
  DiscreteDistribution loss(int min_atoms = 2, int max_atoms = 8);

  /// Random loss with P(X <= deductible) exactly equal to level (a multiple
  /// of 1/16). level == 0 yields a strictly positive loss.
  DiscreteDistribution loss_at_level(double deductible, double level);

  /// Random member of the family on [0, x_max], with slopes above 1 where the
  /// family allows them.
  CededLossFunction contract(const ContractFamily& family, double x_max);

 private:
  std::mt19937_64 rng_;
};

/// Small deterministic family grid on [0, x_max]: the named contract forms
/// plus delayed steep members for the families that admit slopes above one.
std::vector<CededLossFunction> contract_grid(const ContractFamily& family, double x_max);

}  // namespace riskopt

#endif  // RISKOPT_FIXTURES_HPP
