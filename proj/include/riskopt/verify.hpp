#ifndef RISKOPT_VERIFY_HPP
#define RISKOPT_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "riskopt/contracts.hpp"
#include "riskopt/measures.hpp"

namespace riskopt {

/// One assertion inside a suite. `kind` records the epistemic weight of a
/// passing result: "exact" for closed-form identities, "certificate" when a
/// concrete violation witness was required and produced, "evidence" when no
/// violation appeared in N randomized trials (which certifies nothing).
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string kind;
  std::string detail;
  nlohmann::json data;
};

struct Report {
  std::string suite;
  std::string claim;
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<CheckResult> checks;

  bool pass() const;
  nlohmann::json to_json() const;
};

/// Additivity of a concave distortion measure over 1-Lipschitz splits, plus
/// the floor: no feasible contract beats the bare risk value. Throws
/// NotConcave unless h is an increasing concave distortion function.
Report check_lipschitz_additivity(const DistortionFunction& h, int trials, std::uint64_t seed);

/// Strict objective excess for a contract violating the 1-Lipschitz bound
/// between x and y, on the two-point loss splitting mass evenly between them.
/// Throws NotAViolation when f is 1-Lipschitz between the two points.
double lipschitz_violation_gap(const CededLossFunction& f, const DistortionFunction& h,
                               double x, double y);

/// Tail-level additivity over deductible-class splits at the matching level,
/// for the tail mean itself and for its mixtures with the mean.
Report check_deductible_additivity(double level, double deductible, int trials,
                                   std::uint64_t seed);

struct MixtureProbeResult {
  bool consistent = false;  // no strict excess found over the deductible class
  std::optional<nlohmann::json> witness;
};

/// Searches losses at the given level and deductible-class contracts for a
/// split where the measure is strictly superadditive; a witness certifies the
/// measure is not the level-matched ES/mean mixture.
MixtureProbeResult mixture_level_probe(const RiskMeasure& measure, double level,
                                       double deductible, int trials, std::uint64_t seed);

/// Classification flags of the mixture distortion versus probe certificates
/// across a grid of mixture weights.
Report check_mixture_axiom_ranges(double level, const std::vector<double>& weights,
                                  int trials, std::uint64_t seed);

/// (1-p) ES_p + p ES_p^- = mean, exactly on fractional-atom sums, plus the
/// reparameterization between mixtures against the lower tail mean and
/// mixtures against the mean.
Report check_tail_mean_identity(int trials, std::uint64_t seed);

struct SuiteOptions {
  int trials = 200;
  std::uint64_t seed = 7;
  double level = 0.5;
  double deductible = 1.0;
  std::vector<double> weights;  // mixture weight grid; empty selects the default
  std::optional<RiskMeasure> probe_measure;
  std::optional<bool> expect_witness;
};

std::vector<std::string> suite_names();

/// Runs one named suite: thm1-if, thm1-gap, thm2-forward, thm2-probe, lemma5,
/// identity, prop1, prop2, prop3. Throws MalformedInput for unknown names.
Report run_suite(const std::string& name, const SuiteOptions& opts);

}  // namespace riskopt

#endif  // RISKOPT_VERIFY_HPP
