#ifndef RISKOPT_CONTRACTS_HPP
#define RISKOPT_CONTRACTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "riskopt/dist.hpp"

namespace riskopt {

/// Piecewise-linear ceded loss function on [0, infinity). The first knot sits
/// at x = 0 and knot values are nonnegative; beyond the last knot the function
/// continues with an explicit tail slope (which is why the slope is stored
/// rather than implied by the final segment: a deductible contract is two flat
/// knots followed by a positive tail).
class CededLossFunction {
 public:
  struct Knot {
    double x = 0.0;
    double y = 0.0;
  };

  static CededLossFunction from_knots(std::vector<Knot> knots, double tail_slope);

  /// Interpolated/extrapolated value; throws NegativeArgument for x < 0.
  double operator()(double x) const;

  const std::vector<Knot>& knots() const noexcept { return knots_; }
  double tail_slope() const noexcept { return tail_slope_; }

 private:
  CededLossFunction(std::vector<Knot> knots, double tail_slope)
      : knots_(std::move(knots)), tail_slope_(tail_slope) {}
  std::vector<Knot> knots_;
  double tail_slope_ = 0.0;
};

CededLossFunction zero_contract();
CededLossFunction identity_contract();

/// share * (x - deductible)_+ with share in [0,1].
CededLossFunction deductible_coinsurance(double deductible, double share);

/// (x - deductible)_+ capped at the policy limit.
CededLossFunction deductible_limit(double deductible, double limit);

/// Contract classes: payments bounded by the loss (I0), additionally
/// increasing (I1), additionally 1-Lipschitz (I2), or increasing and bounded
/// by the direct-deductible payoff (I1d).
struct ContractFamily {
  enum class Kind { I0, I1, I2, I1d };

  Kind kind = Kind::I0;
  double deductible = 0.0;

  static ContractFamily i0() { return {Kind::I0, 0.0}; }
  static ContractFamily i1() { return {Kind::I1, 0.0}; }
  static ContractFamily i2() { return {Kind::I2, 0.0}; }
  static ContractFamily i1d(double d);
};

struct MembershipResult {
  bool member = false;
  std::optional<double> violation_at;  // a point (or segment midpoint) where a constraint fails
};

/// Exact membership decision on [0, x_max] by knot and slope inspection; a
/// knot is inserted at the deductible so the bound comparison has no gaps.
MembershipResult member_of(const CededLossFunction& f, const ContractFamily& family,
                           double x_max);

/// Pushforward of the insurer payment f(X); requires a nonnegative loss.
DiscreteDistribution ceded(const CededLossFunction& f, const DiscreteDistribution& loss);

/// Pushforward of the retained loss X - f(X); requires a nonnegative loss.
DiscreteDistribution retained(const CededLossFunction& f, const DiscreteDistribution& loss);

/// The coupled pair (f(X), X - f(X)) atom by atom; the joint dependence
/// structure is what the comonotonicity and tail-event checks consume.
JointSample split_joint(const CededLossFunction& f, const DiscreteDistribution& loss);

}  // namespace riskopt

#endif  // RISKOPT_CONTRACTS_HPP
