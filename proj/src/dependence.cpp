#include "riskopt/dependence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace riskopt {

ComonotonicityResult is_comonotonic(const JointSample& joint) {
  const auto& atoms = joint.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      if ((atoms[i].x - atoms[j].x) * (atoms[i].y - atoms[j].y) < 0.0) {
        return {false, std::make_pair(atoms[i], atoms[j])};
      }
    }
  }
  return {true, std::nullopt};
}

namespace {

constexpr double kMassTol = 1e-12;

// All subset sums of the atom probabilities, deduplicated; bails out (returns
// empty) when the set grows past the cap, which only happens for inputs far
// from the dyadic fixtures this is meant for.
std::vector<double> subset_sums(const std::vector<JointAtom>& atoms) {
  std::vector<double> sums{0.0};
  for (const JointAtom& a : atoms) {
    std::vector<double> next;
    next.reserve(2 * sums.size());
    for (double s : sums) {
      next.push_back(s);
      next.push_back(s + a.prob);
    }
    std::sort(next.begin(), next.end());
    sums.clear();
    for (double s : next) {
      if (sums.empty() || s - sums.back() > kMassTol / 4.0) sums.push_back(s);
    }
    if (sums.size() > 2'000'000) return {};
  }
  return sums;
}

bool common_tail_holds(const std::vector<JointAtom>& atoms,
                       const std::vector<std::size_t>& event) {
  std::vector<char> in_event(atoms.size(), 0);
  for (std::size_t idx : event) in_event[idx] = 1;
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = min_x;
  double max_x = -min_x;
  double max_y = -min_x;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (in_event[i]) {
      min_x = std::min(min_x, atoms[i].x);
      min_y = std::min(min_y, atoms[i].y);
    } else {
      max_x = std::max(max_x, atoms[i].x);
      max_y = std::max(max_y, atoms[i].y);
    }
  }
  return min_x >= max_x && min_y >= max_y;
}

}  // namespace

TailEventReport find_common_p_tail(const JointSample& joint, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorKind::InvalidLevel, "tail level must lie in (0,1)");
  }
  const auto& atoms = joint.atoms();
  const double target = 1.0 - p;

  const auto sums = subset_sums(atoms);
  if (!sums.empty()) {
    const bool feasible = std::any_of(sums.begin(), sums.end(), [target](double s) {
      return std::abs(s - target) <= kMassTol;
    });
    if (!feasible) {
      throw Error(ErrorKind::InfeasibleMass, "no atom subset carries mass 1 - p");
    }
  }

  // Order atoms by first coordinate descending (ties by second coordinate
  // descending, then probability descending, then input index).
  std::vector<std::size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&atoms](std::size_t a, std::size_t b) {
    if (atoms[a].x != atoms[b].x) return atoms[a].x > atoms[b].x;
    if (atoms[a].y != atoms[b].y) return atoms[a].y > atoms[b].y;
    if (atoms[a].prob != atoms[b].prob) return atoms[a].prob > atoms[b].prob;
    return a < b;
  });

  // Tie groups of equal first coordinate, descending.
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t idx : order) {
    if (groups.empty() || atoms[groups.back().front()].x != atoms[idx].x) {
      groups.emplace_back();
    }
    groups.back().push_back(idx);
  }

  // A candidate event is a full prefix of groups plus a nonempty subset of the
  // next group; such sets are exactly the upper layers of the first
  // coordinate. The second coordinate and the mass constraint are checked per
  // candidate.
  std::vector<std::size_t> prefix;
  double prefix_mass = 0.0;
  for (const auto& group : groups) {
    const std::size_t g = group.size();
    for (std::uint64_t mask = 1; mask < (1ULL << g); ++mask) {
      std::vector<std::size_t> event = prefix;
      double mass = prefix_mass;
      for (std::size_t b = 0; b < g; ++b) {
        if (mask & (1ULL << b)) {
          event.push_back(group[b]);
          mass += atoms[group[b]].prob;
        }
      }
      if (std::abs(mass - target) > kMassTol) continue;
      if (event.size() == atoms.size()) continue;  // a tail event is a proper subset
      if (common_tail_holds(atoms, event)) {
        std::sort(event.begin(), event.end());
        return {true, std::move(event), p};
      }
    }
    for (std::size_t idx : group) {
      prefix.push_back(idx);
      prefix_mass += atoms[idx].prob;
    }
  }
  return {false, {}, p};
}

JointSample product_embed(const DiscreteDistribution& dist, double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw Error(ErrorKind::InvalidLevel, "event probability must lie in (0,1)");
  }
  std::vector<JointAtom> atoms;
  atoms.reserve(2 * dist.size());
  for (const Atom& a : dist.atoms()) atoms.push_back({a.value, 1.0, a.prob * q});
  for (const Atom& a : dist.atoms()) atoms.push_back({0.0, 0.0, a.prob * (1.0 - q)});
  return JointSample::from_atoms(std::move(atoms));
}

}  // namespace riskopt
