#ifndef RISKOPT_DEPENDENCE_HPP
#define RISKOPT_DEPENDENCE_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "riskopt/dist.hpp"

namespace riskopt {

struct ComonotonicityResult {
  bool comonotonic = false;
  std::optional<std::pair<JointAtom, JointAtom>> witness;  // a discordant pair when false
};

/// Pairwise check of (x_i - x_j)(y_i - y_j) >= 0 over all atom pairs. Exact on
/// finite spaces; symmetric in the two coordinates.
ComonotonicityResult is_comonotonic(const JointSample& joint);

struct TailEventReport {
  bool exists = false;
  std::vector<std::size_t> event;  // atom indices forming A, empty when absent
  double level = 0.0;              // the p with P(A) = 1 - p
};

/// Searches for a common p-tail event of the two coordinates: a subset A of
/// atoms with P(A) = 1 - p (within 1e-12) on which both coordinates dominate
/// their values off A. Candidates are generated by a descending sweep over the
/// first coordinate; atoms tied at the boundary value are resolved by a
/// subset-sum over the tie group (ordered by second coordinate descending), so
/// the first event found is canonical. Throws InfeasibleMass when no subset of
/// atoms carries mass 1 - p at all.
TailEventReport find_common_p_tail(const JointSample& joint, double p);

/// Joint law of (X * 1_A, 1_A) for an event A independent of X with
/// P(A) = q, built on the product space; one atom per product outcome, so the
/// atom count is exactly twice the support size.
JointSample product_embed(const DiscreteDistribution& dist, double q);

}  // namespace riskopt

#endif  // RISKOPT_DEPENDENCE_HPP
