#ifndef RISKOPT_DIST_HPP
#define RISKOPT_DIST_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "riskopt/errors.hpp"

namespace riskopt {

struct Atom {
  double value = 0.0;
  double prob = 0.0;
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// A finite discrete distribution of a bounded loss.
///
/// Canonical form: values strictly increasing, every probability positive,
/// probabilities renormalized to sum to one. Values closer than 1e-12
/// (absolute) are merged on construction. Immutable after construction.
class DiscreteDistribution {
 public:
  /// Builds the canonical form of a raw atom list. Duplicate values are
  /// merged, zero-probability atoms dropped, values sorted ascending, and
  /// probabilities divided by their exact sum.
  ///
  /// Throws NegativeProbability for any prob < 0, ProbabilityMassMismatch
  /// when the total deviates from 1 by more than 1e-9, NonFiniteValue for
  /// NaN/infinite entries.
  static DiscreteDistribution canonical(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  double min_value() const noexcept { return atoms_.front().value; }
  double max_value() const noexcept { return atoms_.back().value; }
  bool nonnegative() const noexcept { return atoms_.front().value >= 0.0; }

 private:
  explicit DiscreteDistribution(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}
  std::vector<Atom> atoms_;
};

inline DiscreteDistribution canonicalize(std::vector<Atom> atoms) {
  return DiscreteDistribution::canonical(std::move(atoms));
}

DiscreteDistribution point_mass(double value);

/// Left quantile inf{x : P(X <= x) >= p} for p in (0,1). When p lands
/// exactly on a cumulative mass the lower value is returned.
double var(const DiscreteDistribution& dist, double level);

/// Expected Shortfall at level p in [0,1): the average of the worst (1-p)
/// tail, computed by exact fractional-atom averaging (the boundary atom is
/// split proportionally, never sampled). es(X, 0) is the mean.
double es(const DiscreteDistribution& dist, double level);

/// Lower-tail counterpart of es: the average of the best p tail, p in (0,1].
double left_es(const DiscreteDistribution& dist, double level);

double mean(const DiscreteDistribution& dist);

/// Pushforward through g, canonicalized.
DiscreteDistribution transform(const DiscreteDistribution& dist,
                               const std::function<double(double)>& g);

DiscreteDistribution shift(const DiscreteDistribution& dist, double offset);

/// Scales every value by factor >= 0; throws NegativeScale otherwise.
DiscreteDistribution scale(const DiscreteDistribution& dist, double factor);

/// Classification of a loss against the nonnegative cone and the level sets
/// cut at a deductible: level is P(X <= deductible).
struct MembershipReport {
  bool nonnegative = false;      ///< all support values >= 0
  double level = 0.0;            ///< p = P(X <= deductible)
  bool in_deductible_level_set = false;  ///< nonnegative with this exact level
  bool in_level_set = false;     ///< some admissible deductible produces this level
};

MembershipReport membership_class(const DiscreteDistribution& dist, double deductible);

struct JointAtom {
  double x = 0.0;
  double y = 0.0;
  double prob = 0.0;
};

/// A finite joint distribution of a pair. Atoms are kept as given (no
/// merging) so that product constructions preserve their outcome count;
/// probabilities must be positive and sum to one within 1e-12.
class JointSample {
 public:
  static JointSample from_atoms(std::vector<JointAtom> atoms);

  const std::vector<JointAtom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

 private:
  explicit JointSample(std::vector<JointAtom> atoms) : atoms_(std::move(atoms)) {}
  std::vector<JointAtom> atoms_;
};

DiscreteDistribution first_marginal(const JointSample& joint);
DiscreteDistribution second_marginal(const JointSample& joint);

/// Distribution of f(X, Y) evaluated atom-by-atom on the joint space.
DiscreteDistribution combine(const JointSample& joint,
                             const std::function<double(double, double)>& f);

}  // namespace riskopt

#endif  // RISKOPT_DIST_HPP
