#ifndef RISKOPT_MEASURES_HPP
#define RISKOPT_MEASURES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "riskopt/dist.hpp"

namespace riskopt {

/// Piecewise-linear function h on [0,1] given by knots. Used both for proper
/// distortion functions (increasing, h(0)=0, h(1)=1) and for the signed,
/// possibly non-monotone functions arising from ES/mean mixtures; the shape
/// flags are therefore checked by classify_distortion, never assumed.
class DistortionFunction {
 public:
  struct Knot {
    double t = 0.0;
    double h = 0.0;
  };

  /// Validates the knot list: t strictly increasing, first t == 0, last t == 1.
  static DistortionFunction from_knots(std::vector<Knot> knots);

  double operator()(double t) const;
  const std::vector<Knot>& knots() const noexcept { return knots_; }
  double at_zero() const noexcept { return knots_.front().h; }
  double at_one() const noexcept { return knots_.back().h; }

 private:
  explicit DistortionFunction(std::vector<Knot> knots) : knots_(std::move(knots)) {}
  std::vector<Knot> knots_;
};

struct Mean {};
struct ValueAtRisk {
  double level;
};
struct ExpectedShortfall {
  double level;
};
struct LeftExpectedShortfall {
  double level;
};
struct DistortionMeasure {
  DistortionFunction h;
};
/// weight * ES_level + (1 - weight) * mean; weight may be negative.
struct EsMeanMixture {
  double level;
  double weight;
};

using RiskMeasure = std::variant<Mean, ValueAtRisk, ExpectedShortfall,
                                 LeftExpectedShortfall, DistortionMeasure, EsMeanMixture>;

/// Evaluates any measure on a canonical distribution. Distortion measures use
/// the exact telescoping Choquet sum over the sorted support, which on finite
/// supports reproduces the survival-integral definition including the
/// negative-value correction.
double evaluate(const RiskMeasure& measure, const DiscreteDistribution& dist);

/// Three-knot h with breakpoint at 1 - level realizing the ES/mean mixture as
/// a (signed) Choquet integral.
DistortionFunction mixture_distortion(double level, double weight);

struct DistortionTraits {
  bool increasing = false;
  bool concave = false;
  bool valid_distortion = false;
};

/// Slope inspection across knot segments; tolerances are 1e-12 absolute.
DistortionTraits classify_distortion(const DistortionFunction& h);

/// Closed-form mixture-weight ranges at a fixed level: the mixture is convex
/// iff weight >= 0, monotone iff weight in [1 - 1/level, 1], and lower
/// semicontinuous under a.s. convergence iff weight >= 1. The last range has
/// no finite-space test surface and is exposed for classification only.
struct MixtureWeightRanges {
  double convex_min = 0.0;
  double monotone_min = 0.0;
  double monotone_max = 1.0;
  double lsc_min = 1.0;
};

MixtureWeightRanges mixture_lambda_ranges(double level);

bool is_convex_measure(const RiskMeasure& measure);
bool is_coherent_measure(const RiskMeasure& measure);
bool is_translation_invariant(const RiskMeasure& measure);
std::string describe(const RiskMeasure& measure);

struct AxiomViolation {
  std::string axiom;        // "monotonicity" | "translation" | "convexity" | "homogeneity"
  std::string description;  // human-readable inequality with numbers
  double lhs = 0.0;
  double rhs = 0.0;
  std::vector<JointAtom> witness;  // joint law of the offending pair
};

struct AxiomReport {
  std::string measure;
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<AxiomViolation> violations;
  bool any_violation() const noexcept { return !violations.empty(); }
  bool violated(const std::string& axiom) const;
};

/// Randomized search for axiom violations on small shared finite spaces
/// (joint supports of up to 6 atoms, values on the integer grid [-3,3],
/// dyadic probabilities). A handful of canonical two-point configurations is
/// probed before the random trials so that standard counterexamples are
/// reported deterministically. A probe can certify a violation, never
/// satisfaction; at most one witness per axiom is kept.
AxiomReport axiom_probe(const RiskMeasure& measure, int trials, std::uint64_t seed);

}  // namespace riskopt

#endif  // RISKOPT_MEASURES_HPP
