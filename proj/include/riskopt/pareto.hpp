#ifndef RISKOPT_PARETO_HPP
#define RISKOPT_PARETO_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "riskopt/contracts.hpp"
#include "riskopt/dist.hpp"
#include "riskopt/measures.hpp"

namespace riskopt {

/// Premium rules: expected value with a proportional loading, or the
/// insurer's own measure applied to the ceded loss.
struct ExpectedValuePremium {
  double loading = 0.0;
};
struct InsurerPremium {};
using PremiumRule = std::variant<ExpectedValuePremium, InsurerPremium>;

struct ParetoProblem {
  DiscreteDistribution loss;
  RiskMeasure insured;  // applied to the retained side
  RiskMeasure insurer;  // applied to the ceded side
  ContractFamily family = ContractFamily::i1();
  PremiumRule premium = ExpectedValuePremium{};
};

double premium(const ParetoProblem& prob, const CededLossFunction& f);

/// Premium-free total risk: insured(X - f(X)) + insurer(f(X)). For
/// translation-invariant measures the minimizer set agrees with the
/// premium-loaded form below for every premium rule.
double objective(const ParetoProblem& prob, const CededLossFunction& f);

/// insured(X - f(X) + pi(f)) + insurer(f(X) - pi(f)).
double objective_with_premium(const ParetoProblem& prob, const CededLossFunction& f);

struct SolveSettings {
  int iterations = 10000;    ///< projected subgradient steps (step c/sqrt(k))
  int polish_passes = 8;     ///< cyclic coordinate sweeps after the subgradient phase
  double step_scale = 0.0;   ///< c; 0 selects half the largest support value
  bool grid_certificate = true;  ///< run the enumeration oracle when the support is small
  int grid_steps = 11;
};

enum class SolveMethod { Subgradient, GridOracle };

struct SolveResult {
  double optimal_value = 0.0;
  std::vector<double> ceded_values;  ///< payment at each support point, ascending
  SolveMethod method = SolveMethod::Subgradient;
  double certified_gap = 0.0;  ///< nonnegative bound on suboptimality evidence
  std::optional<double> oracle_value;
};

/// Minimizes the premium-free objective over the family, parameterized by the
/// payment vector at the support points (the objective depends on f only
/// through those values; a piecewise-linear extension through them, with a
/// knot forced at the deductible, represents the minimizer). Convexity of
/// both measures is required; VaR, the lower tail mean, negative-weight
/// mixtures, and non-concave distortions are refused with NonConvexMeasure.
SolveResult solve(const ParetoProblem& prob, const SolveSettings& settings = {});

/// Exhaustive enumeration over the per-coordinate grid {0, x_i/m, ..., x_i}
/// filtered by the family constraints. Supports up to 5 atoms and m <= 21;
/// ties resolve to the lexicographically smallest payment vector.
SolveResult brute_force_oracle(const ParetoProblem& prob, int steps_per_coordinate);

/// Piecewise-linear contract through (x_i, g_i), starting at (0,0), with a
/// knot at the family deductible and a flat tail.
CededLossFunction to_contract(const ParetoProblem& prob, const std::vector<double>& ceded_values);

/// Whether a payment vector at the support points satisfies the family's
/// bound, monotonicity, and slope constraints within tol.
bool family_feasible(const ContractFamily& family, const DiscreteDistribution& loss,
                     const std::vector<double>& ceded_values, double tol = 1e-9);

struct ParetoCheck {
  bool optimal = false;
  std::optional<std::size_t> dominator;  // index into the candidate list
};

/// Pareto optimality of f against a finite candidate set under the problem's
/// premium rule: no candidate weakly improves both parties with one strict
/// improvement (strictness tolerance 1e-9).
ParetoCheck is_pareto_optimal(const ParetoProblem& prob, const CededLossFunction& f,
                              const std::vector<CededLossFunction>& candidates);

/// Joint check that the following agree on the candidate set: f minimizes the
/// premium-free objective, f is Pareto optimal when the premium is the
/// insurer's measure of the ceded loss, and f is Pareto optimal under every
/// supplied premium rule.
bool check_prop1_equivalence(const ParetoProblem& prob, const CededLossFunction& f,
                             const std::vector<CededLossFunction>& candidates,
                             const std::vector<PremiumRule>& premiums);

/// Indices of candidates within tol of the best objective (premium-loaded
/// when with_premium is set).
std::vector<std::size_t> argmin_set(const ParetoProblem& prob,
                                    const std::vector<CededLossFunction>& candidates,
                                    bool with_premium, double tol = 1e-9);

/// Contracts optimal for every loss in the bundle when both sides use the
/// insurer's measure: intersection of the per-loss argmin sets over the
/// candidate grid. A finite loss list can only over-approximate the
/// all-losses menu; throws EmptyMenu when the intersection is empty at this
/// grid resolution.
std::vector<std::size_t> menu(const std::vector<DiscreteDistribution>& losses,
                              const RiskMeasure& insurer,
                              const std::vector<CededLossFunction>& candidates,
                              double tol = 1e-9);

/// Every minimizer under (insured, insurer) is a minimizer under
/// (insurer, insurer), given that the insured's measure dominates pointwise
/// on the tested distributions; throws PrecedenceNotVerified when the
/// domination fails somewhere (the inclusion is then unsupported, not false).
bool check_prop3_inclusion(const DiscreteDistribution& loss, const RiskMeasure& insured,
                           const RiskMeasure& insurer,
                           const std::vector<CededLossFunction>& candidates);

}  // namespace riskopt

#endif  // RISKOPT_PARETO_HPP
