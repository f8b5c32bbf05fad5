#include "riskopt/dist.hpp"

#include <algorithm>
#include <cmath>

namespace riskopt {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NegativeProbability: return "NegativeProbability";
    case ErrorKind::ProbabilityMassMismatch: return "ProbabilityMassMismatch";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::InvalidLevel: return "InvalidLevel";
    case ErrorKind::NegativeScale: return "NegativeScale";
    case ErrorKind::NegativeArgument: return "NegativeArgument";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::NotNonnegativeLoss: return "NotNonnegativeLoss";
    case ErrorKind::InfeasibleMass: return "InfeasibleMass";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::EmptyMenu: return "EmptyMenu";
    case ErrorKind::PrecedenceNotVerified: return "PrecedenceNotVerified";
    case ErrorKind::NotConcave: return "NotConcave";
    case ErrorKind::NotAViolation: return "NotAViolation";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::NonConvexMeasure: return "NonConvexMeasure";
    case ErrorKind::UnsupportedFamily: return "UnsupportedFamily";
  }
  return "UnknownError";
}

namespace {
constexpr double kMergeTol = 1e-12;   // absolute merge tolerance for values
constexpr double kMassTol = 1e-9;     // accepted deviation of total input mass
}  // namespace

DiscreteDistribution DiscreteDistribution::canonical(std::vector<Atom> atoms) {
  double sum = 0.0;
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.value) || !std::isfinite(a.prob)) {
      throw Error(ErrorKind::NonFiniteValue, "distribution atoms must be finite");
    }
    if (a.prob < 0.0) {
      throw Error(ErrorKind::NegativeProbability, "atom probability below zero");
    }
    sum += a.prob;
  }
  if (std::abs(sum - 1.0) > kMassTol) {
    throw Error(ErrorKind::ProbabilityMassMismatch,
                "probabilities sum to " + std::to_string(sum));
  }

  std::erase_if(atoms, [](const Atom& a) { return a.prob == 0.0; });
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.value < b.value; });

  std::vector<Atom> merged;
  merged.reserve(atoms.size());
  for (const Atom& a : atoms) {
    if (!merged.empty() && a.value - merged.back().value <= kMergeTol) {
      merged.back().prob += a.prob;
    } else {
      merged.push_back(a);
    }
  }

  double total = 0.0;
  for (const Atom& a : merged) total += a.prob;
  for (Atom& a : merged) a.prob /= total;
  return DiscreteDistribution(std::move(merged));
}

DiscreteDistribution point_mass(double value) {
  return DiscreteDistribution::canonical({{value, 1.0}});
}

double var(const DiscreteDistribution& dist, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(ErrorKind::InvalidLevel, "quantile level must lie in (0,1)");
  }
  double cum = 0.0;
  for (const Atom& a : dist.atoms()) {
    cum += a.prob;
    if (cum >= level) return a.value;
  }
  return dist.max_value();  // cumulative rounding shortfall
}

double es(const DiscreteDistribution& dist, double level) {
  if (!(level >= 0.0 && level < 1.0)) {
    throw Error(ErrorKind::InvalidLevel, "tail level must lie in [0,1)");
  }
  const double tail = 1.0 - level;
  double need = tail;
  double acc = 0.0;
  const auto& atoms = dist.atoms();
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) {
    const double w = std::min(it->prob, need);
    acc += w * it->value;
    need -= w;
    if (need <= 0.0) break;
  }
  return acc / tail;
}

double left_es(const DiscreteDistribution& dist, double level) {
  if (!(level > 0.0 && level <= 1.0)) {
    throw Error(ErrorKind::InvalidLevel, "tail level must lie in (0,1]");
  }
  double need = level;
  double acc = 0.0;
  for (const Atom& a : dist.atoms()) {
    const double w = std::min(a.prob, need);
    acc += w * a.value;
    need -= w;
    if (need <= 0.0) break;
  }
  return acc / level;
}

double mean(const DiscreteDistribution& dist) {
  double acc = 0.0;
  for (const Atom& a : dist.atoms()) acc += a.prob * a.value;
  return acc;
}

DiscreteDistribution transform(const DiscreteDistribution& dist,
                               const std::function<double(double)>& g) {
  std::vector<Atom> atoms;
  atoms.reserve(dist.size());
  for (const Atom& a : dist.atoms()) atoms.push_back({g(a.value), a.prob});
  return DiscreteDistribution::canonical(std::move(atoms));
}

DiscreteDistribution shift(const DiscreteDistribution& dist, double offset) {
  return transform(dist, [offset](double v) { return v + offset; });
}

DiscreteDistribution scale(const DiscreteDistribution& dist, double factor) {
  if (factor < 0.0) {
    throw Error(ErrorKind::NegativeScale, "scale factor must be nonnegative");
  }
  return transform(dist, [factor](double v) { return factor * v; });
}

MembershipReport membership_class(const DiscreteDistribution& dist, double deductible) {
  if (deductible < 0.0) {
    throw Error(ErrorKind::ParameterOutOfRange, "deductible must be nonnegative");
  }
  MembershipReport report;
  report.nonnegative = dist.nonnegative();
  double level = 0.0;
  for (const Atom& a : dist.atoms()) {
    if (a.value <= deductible) level += a.prob;
  }
  report.level = level;
  report.in_deductible_level_set = report.nonnegative;
  report.in_level_set = true;  // witnessed by the supplied deductible
  return report;
}

JointSample JointSample::from_atoms(std::vector<JointAtom> atoms) {
  double sum = 0.0;
  for (const JointAtom& a : atoms) {
    if (!std::isfinite(a.x) || !std::isfinite(a.y) || !std::isfinite(a.prob)) {
      throw Error(ErrorKind::NonFiniteValue, "joint atoms must be finite");
    }
    if (a.prob <= 0.0) {
      throw Error(ErrorKind::NegativeProbability, "joint atom probability must be positive");
    }
    sum += a.prob;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw Error(ErrorKind::ProbabilityMassMismatch,
                "joint probabilities sum to " + std::to_string(sum));
  }
  return JointSample(std::move(atoms));
}

DiscreteDistribution first_marginal(const JointSample& joint) {
  return combine(joint, [](double x, double) { return x; });
}

DiscreteDistribution second_marginal(const JointSample& joint) {
  return combine(joint, [](double, double y) { return y; });
}

DiscreteDistribution combine(const JointSample& joint,
                             const std::function<double(double, double)>& f) {
  std::vector<Atom> atoms;
  atoms.reserve(joint.size());
  for (const JointAtom& a : joint.atoms()) atoms.push_back({f(a.x, a.y), a.prob});
  return DiscreteDistribution::canonical(std::move(atoms));
}

}  // namespace riskopt
