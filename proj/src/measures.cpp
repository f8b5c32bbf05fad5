#include "riskopt/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace riskopt {

namespace {

constexpr double kSlopeTol = 1e-12;
constexpr double kProbeTol = 1e-9;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

DistortionFunction DistortionFunction::from_knots(std::vector<Knot> knots) {
  if (knots.size() < 2) {
    throw Error(ErrorKind::ParameterOutOfRange, "distortion needs at least two knots");
  }
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i].t) || !std::isfinite(knots[i].h)) {
      throw Error(ErrorKind::NonFiniteValue, "distortion knots must be finite");
    }
    if (i > 0 && !(knots[i].t > knots[i - 1].t)) {
      throw Error(ErrorKind::ParameterOutOfRange, "distortion knots must increase in t");
    }
  }
  if (knots.front().t != 0.0 || knots.back().t != 1.0) {
    throw Error(ErrorKind::ParameterOutOfRange, "distortion knots must span [0,1]");
  }
  return DistortionFunction(std::move(knots));
}

double DistortionFunction::operator()(double t) const {
  if (t <= 0.0) return knots_.front().h;
  if (t >= 1.0) return knots_.back().h;
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                             [](double v, const Knot& k) { return v < k.t; });
  const Knot& hi = *it;
  const Knot& lo = *(it - 1);
  if (t == lo.t) return lo.h;
  return lo.h + (t - lo.t) * (hi.h - lo.h) / (hi.t - lo.t);
}

namespace {

// Telescoping Choquet sum over the sorted support. Equals the survival
// integral (with its negative-part correction) for any h with h(0)=0; the
// knot list may be signed or non-monotone.
double choquet(const DistortionFunction& h, const DiscreteDistribution& dist) {
  const auto& atoms = dist.atoms();
  double acc = 0.0;
  double cum = 0.0;
  double h_prev = h.at_one();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    cum += atoms[i].prob;
    const double survival =
        (i + 1 == atoms.size()) ? 0.0 : std::clamp(1.0 - cum, 0.0, 1.0);
    const double h_cur = h(survival);
    acc += atoms[i].value * (h_prev - h_cur);
    h_prev = h_cur;
  }
  return acc;
}

}  // namespace

double evaluate(const RiskMeasure& measure, const DiscreteDistribution& dist) {
  return std::visit(
      [&dist](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Mean>) {
          return mean(dist);
        } else if constexpr (std::is_same_v<T, ValueAtRisk>) {
          return var(dist, m.level);
        } else if constexpr (std::is_same_v<T, ExpectedShortfall>) {
          return es(dist, m.level);
        } else if constexpr (std::is_same_v<T, LeftExpectedShortfall>) {
          return left_es(dist, m.level);
        } else if constexpr (std::is_same_v<T, DistortionMeasure>) {
          return choquet(m.h, dist);
        } else {
          if (!(m.level > 0.0 && m.level < 1.0)) {
            throw Error(ErrorKind::InvalidLevel, "mixture level must lie in (0,1)");
          }
          return m.weight * es(dist, m.level) + (1.0 - m.weight) * mean(dist);
        }
      },
      measure);
}

DistortionFunction mixture_distortion(double level, double weight) {
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(ErrorKind::InvalidLevel, "mixture level must lie in (0,1)");
  }
  const double breakpoint = 1.0 - level;
  const double mid = weight + (1.0 - weight) * breakpoint;
  return DistortionFunction::from_knots({{0.0, 0.0}, {breakpoint, mid}, {1.0, 1.0}});
}

DistortionTraits classify_distortion(const DistortionFunction& h) {
  const auto& knots = h.knots();
  DistortionTraits traits;
  traits.increasing = true;
  traits.concave = true;
  double prev_slope = 0.0;
  for (std::size_t i = 1; i < knots.size(); ++i) {
    const double slope = (knots[i].h - knots[i - 1].h) / (knots[i].t - knots[i - 1].t);
    if (slope < -kSlopeTol) traits.increasing = false;
    if (i > 1 && slope > prev_slope + kSlopeTol) traits.concave = false;
    prev_slope = slope;
  }
  traits.valid_distortion = traits.increasing && std::abs(h.at_zero()) <= kSlopeTol &&
                            std::abs(h.at_one() - 1.0) <= kSlopeTol;
  return traits;
}

MixtureWeightRanges mixture_lambda_ranges(double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(ErrorKind::InvalidLevel, "mixture level must lie in (0,1)");
  }
  MixtureWeightRanges ranges;
  ranges.convex_min = 0.0;
  ranges.monotone_min = 1.0 - 1.0 / level;
  ranges.monotone_max = 1.0;
  ranges.lsc_min = 1.0;
  return ranges;
}

bool is_convex_measure(const RiskMeasure& measure) {
  return std::visit(
      [](const auto& m) -> bool {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Mean> || std::is_same_v<T, ExpectedShortfall>) {
          return true;
        } else if constexpr (std::is_same_v<T, DistortionMeasure>) {
          return classify_distortion(m.h).concave;
        } else if constexpr (std::is_same_v<T, EsMeanMixture>) {
          return m.weight >= 0.0;
        } else {
          return false;  // VaR and the lower tail mean are not convex
        }
      },
      measure);
}

bool is_coherent_measure(const RiskMeasure& measure) {
  return std::visit(
      [](const auto& m) -> bool {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Mean> || std::is_same_v<T, ExpectedShortfall>) {
          return true;
        } else if constexpr (std::is_same_v<T, DistortionMeasure>) {
          const auto traits = classify_distortion(m.h);
          return traits.concave && traits.valid_distortion;
        } else if constexpr (std::is_same_v<T, EsMeanMixture>) {
          return m.weight >= 0.0 && m.weight <= 1.0;
        } else {
          return false;
        }
      },
      measure);
}

bool is_translation_invariant(const RiskMeasure& measure) {
  if (const auto* d = std::get_if<DistortionMeasure>(&measure)) {
    return std::abs(d->h.at_one() - d->h.at_zero() - 1.0) <= kSlopeTol;
  }
  return true;
}

std::string describe(const RiskMeasure& measure) {
  return std::visit(
      [](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Mean>) {
          return "mean";
        } else if constexpr (std::is_same_v<T, ValueAtRisk>) {
          return "var@" + fmt(m.level);
        } else if constexpr (std::is_same_v<T, ExpectedShortfall>) {
          return "es@" + fmt(m.level);
        } else if constexpr (std::is_same_v<T, LeftExpectedShortfall>) {
          return "les@" + fmt(m.level);
        } else if constexpr (std::is_same_v<T, DistortionMeasure>) {
          return "dist(" + std::to_string(m.h.knots().size()) + " knots)";
        } else {
          return "mix@" + fmt(m.level) + ":" + fmt(m.weight);
        }
      },
      measure);
}

bool AxiomReport::violated(const std::string& axiom) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&axiom](const AxiomViolation& v) { return v.axiom == axiom; });
}

namespace {

std::uint64_t splitmix(std::uint64_t state) {
  std::uint64_t z = state + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(splitmix(splitmix(seed) ^ splitmix(stream * 0x100000001b3ULL)));
}

// Random joint law: 2..6 atoms, integer values in [-3,3], probabilities k/16.
JointSample random_joint(std::mt19937_64& rng) {
  const int n = std::uniform_int_distribution<int>(2, 6)(rng);
  std::vector<int> cuts{0, 16};
  std::uniform_int_distribution<int> cut(1, 15);
  while (static_cast<int>(cuts.size()) < n + 1) {
    const int c = cut(rng);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::uniform_int_distribution<int> value(-3, 3);
  std::vector<JointAtom> atoms;
  for (int i = 0; i < n; ++i) {
    atoms.push_back({static_cast<double>(value(rng)), static_cast<double>(value(rng)),
                     (cuts[i + 1] - cuts[i]) / 16.0});
  }
  return JointSample::from_atoms(std::move(atoms));
}

// Two-point configurations known to expose the standard failures: indicator
// losses with tail bumps on and off the tail event, at three event masses.
std::vector<JointSample> canonical_pairs() {
  std::vector<JointSample> out;
  for (double q : {0.25, 0.5, 0.75}) {
    out.push_back(JointSample::from_atoms({{2.0, 0.0, q}, {0.0, 1.0, 1.0 - q}}));
    out.push_back(JointSample::from_atoms({{2.0, 1.0, q}, {0.0, 0.0, 1.0 - q}}));
    out.push_back(JointSample::from_atoms({{1.0, 0.0, q}, {0.0, 1.0, 1.0 - q}}));
  }
  return out;
}

void probe_monotonicity(const RiskMeasure& m, const JointSample& joint, AxiomReport& report) {
  if (report.violated("monotonicity")) return;
  const auto base = first_marginal(joint);
  const auto bumped = combine(joint, [](double x, double y) { return x + std::max(y, 0.0); });
  const double lo = evaluate(m, base);
  const double hi = evaluate(m, bumped);
  if (lo > hi + kProbeTol) {
    report.violations.push_back({"monotonicity",
                                 "rho(X) = " + fmt(lo) + " > rho(Y) = " + fmt(hi) +
                                     " although Y >= X pointwise",
                                 lo, hi, joint.atoms()});
  }
}

void probe_translation(const RiskMeasure& m, const JointSample& joint, double c,
                       AxiomReport& report) {
  if (report.violated("translation")) return;
  const auto base = first_marginal(joint);
  const double lhs = evaluate(m, shift(base, c));
  const double rhs = evaluate(m, base) + c;
  if (std::abs(lhs - rhs) > kProbeTol) {
    report.violations.push_back({"translation",
                                 "rho(X + " + fmt(c) + ") = " + fmt(lhs) +
                                     " differs from rho(X) + c = " + fmt(rhs),
                                 lhs, rhs, joint.atoms()});
  }
}

void probe_homogeneity(const RiskMeasure& m, const JointSample& joint, double a,
                       AxiomReport& report) {
  if (report.violated("homogeneity")) return;
  const auto base = first_marginal(joint);
  const double lhs = evaluate(m, scale(base, a));
  const double rhs = a * evaluate(m, base);
  if (std::abs(lhs - rhs) > kProbeTol) {
    report.violations.push_back({"homogeneity",
                                 "rho(" + fmt(a) + " X) = " + fmt(lhs) +
                                     " differs from scaled value " + fmt(rhs),
                                 lhs, rhs, joint.atoms()});
  }
}

void probe_convexity(const RiskMeasure& m, const JointSample& joint, double w,
                     AxiomReport& report) {
  if (report.violated("convexity")) return;
  const auto x = first_marginal(joint);
  const auto y = second_marginal(joint);
  const auto mixed = combine(joint, [w](double a, double b) { return w * a + (1.0 - w) * b; });
  const double lhs = evaluate(m, mixed);
  const double rhs = w * evaluate(m, x) + (1.0 - w) * evaluate(m, y);
  if (lhs > rhs + kProbeTol) {
    report.violations.push_back({"convexity",
                                 "rho(" + fmt(w) + " X + " + fmt(1.0 - w) + " Y) = " + fmt(lhs) +
                                     " exceeds the chord value " + fmt(rhs),
                                 lhs, rhs, joint.atoms()});
  }
}

}  // namespace

AxiomReport axiom_probe(const RiskMeasure& measure, int trials, std::uint64_t seed) {
  AxiomReport report;
  report.measure = describe(measure);
  report.seed = seed;
  report.trials = trials;

  for (const JointSample& joint : canonical_pairs()) {
    probe_monotonicity(measure, joint, report);
    probe_convexity(measure, joint, 0.5, report);
    probe_translation(measure, joint, 1.0, report);
    probe_homogeneity(measure, joint, 2.0, report);
  }

  for (int t = 0; t < trials; ++t) {
    if (report.violations.size() == 4) break;
    {
      auto rng = stream_rng(seed, 4ULL * t);
      probe_monotonicity(measure, random_joint(rng), report);
    }
    {
      auto rng = stream_rng(seed, 4ULL * t + 1);
      const auto joint = random_joint(rng);
      const double c = std::uniform_int_distribution<int>(-8, 8)(rng) / 4.0;
      probe_translation(measure, joint, c, report);
    }
    {
      auto rng = stream_rng(seed, 4ULL * t + 2);
      const auto joint = random_joint(rng);
      const double a = std::uniform_int_distribution<int>(0, 8)(rng) / 4.0;
      probe_homogeneity(measure, joint, a, report);
    }
    {
      auto rng = stream_rng(seed, 4ULL * t + 3);
      const auto joint = random_joint(rng);
      const double w = std::uniform_int_distribution<int>(1, 7)(rng) / 8.0;
      probe_convexity(measure, joint, w, report);
    }
  }
  return report;
}

}  // namespace riskopt
