#include "riskopt/fixtures.hpp"

#include <algorithm>
#include <cmath>

namespace riskopt {

namespace {

std::uint64_t splitmix(std::uint64_t state) {
  std::uint64_t z = state + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr double kGrid = 0.25;
constexpr double kValueMax = 5.0;

}  // namespace

FixtureGen::FixtureGen(std::uint64_t seed) : rng_(splitmix(seed)) {}

FixtureGen FixtureGen::stream(std::uint64_t seed, std::uint64_t stream) {
  return FixtureGen(splitmix(seed) ^ splitmix(stream * 0x100000001b3ULL));
}

int FixtureGen::uniform_int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng_);
}

double FixtureGen::pick(const std::vector<double>& values) {
  return values[static_cast<std::size_t>(uniform_int(0, static_cast<int>(values.size()) - 1))];
}

namespace {

// Composition of `total` sixteenths into `count` positive integer parts.
std::vector<int> composition(FixtureGen& gen, int total, int count) {
  std::vector<int> cuts{0, total};
  while (static_cast<int>(cuts.size()) < count + 1) {
    const int c = gen.uniform_int(1, total - 1);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<int> parts;
  parts.reserve(count);
  for (int i = 0; i < count; ++i) parts.push_back(cuts[i + 1] - cuts[i]);
  return parts;
}

std::vector<double> distinct_grid_values(FixtureGen& gen, int count, double lo, double hi) {
  const int lo_i = static_cast<int>(std::ceil(lo / kGrid - 1e-9));
  const int hi_i = static_cast<int>(std::floor(hi / kGrid + 1e-9));
  std::vector<int> picked;
  while (static_cast<int>(picked.size()) < count) {
    const int v = gen.uniform_int(lo_i, hi_i);
    if (std::find(picked.begin(), picked.end(), v) == picked.end()) picked.push_back(v);
  }
  std::sort(picked.begin(), picked.end());
  std::vector<double> values;
  values.reserve(count);
  for (int v : picked) values.push_back(v * kGrid);
  return values;
}

}  // namespace

std::vector<double> FixtureGen::dyadic_probs(int count) {
  const auto parts = composition(*this, 16, count);
  std::vector<double> probs;
  probs.reserve(count);
  for (int p : parts) probs.push_back(p / 16.0);
  return probs;
}

double FixtureGen::dyadic_level() {
  return uniform_int(1, 15) / 16.0;
}

DiscreteDistribution FixtureGen::loss(int min_atoms, int max_atoms) {
  const int n = uniform_int(min_atoms, std::min(max_atoms, 16));
  const auto values = distinct_grid_values(*this, n, 0.0, kValueMax);
  const auto probs = dyadic_probs(n);
  std::vector<Atom> atoms;
  for (int i = 0; i < n; ++i) atoms.push_back({values[i], probs[i]});
  return DiscreteDistribution::canonical(std::move(atoms));
}

DiscreteDistribution FixtureGen::loss_at_level(double deductible, double level) {
  const int mass_low = static_cast<int>(std::lround(level * 16.0));
  if (mass_low < 0 || mass_low > 15) {
    throw Error(ErrorKind::InvalidLevel, "fixture level must be k/16 with k in [0,15]");
  }
  const int below_slots = static_cast<int>(std::floor(deductible / kGrid + 1e-9)) + 1;
  const int above_slots = static_cast<int>(std::floor(kValueMax / kGrid + 1e-9)) -
                          static_cast<int>(std::floor(deductible / kGrid + 1e-9));
  if (above_slots < 1 || (mass_low > 0 && below_slots < 1)) {
    throw Error(ErrorKind::ParameterOutOfRange, "deductible leaves no room on the value grid");
  }

  std::vector<Atom> atoms;
  if (mass_low > 0) {
    const int k = uniform_int(1, std::min({4, mass_low, below_slots}));
    const auto values = distinct_grid_values(*this, k, 0.0, deductible);
    const auto parts = composition(*this, mass_low, k);
    for (int i = 0; i < k; ++i) atoms.push_back({values[i], parts[i] / 16.0});
  }
  const int mass_high = 16 - mass_low;
  const int k = uniform_int(1, std::min({4, mass_high, above_slots}));
  const auto values = distinct_grid_values(*this, k, deductible + kGrid, kValueMax);
  const auto parts = composition(*this, mass_high, k);
  for (int i = 0; i < k; ++i) atoms.push_back({values[i], parts[i] / 16.0});
  return DiscreteDistribution::canonical(std::move(atoms));
}

CededLossFunction FixtureGen::contract(const ContractFamily& family, double x_max) {
  using Kind = ContractFamily::Kind;
  const double top = std::max(std::ceil(x_max / kGrid) * kGrid, 4.0 * kGrid);
  const double start = family.kind == Kind::I1d ? family.deductible : 0.0;
  const int segments = uniform_int(1, 3);

  std::vector<double> xs{0.0};
  if (start > 0.0) xs.push_back(start);
  if (top - start >= kGrid * (segments + 1)) {
    auto inner = distinct_grid_values(*this, segments, start + kGrid, top);
    xs.insert(xs.end(), inner.begin(), inner.end());
  }

  std::vector<CededLossFunction::Knot> knots;
  double y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    if (i > 0 && x > start) {
      const double dx = x - xs[i - 1];
      switch (family.kind) {
        case Kind::I0:
          // free nonnegative value bounded by the loss, slopes unconstrained
          y = kGrid * uniform_int(0, static_cast<int>(std::floor(x / kGrid + 1e-9)));
          break;
        case Kind::I1:
          y = std::min(y + (uniform_int(0, 16) / 8.0) * dx, x);
          break;
        case Kind::I2:
          y = y + (uniform_int(0, 8) / 8.0) * dx;
          break;
        case Kind::I1d:
          y = std::min(y + (uniform_int(0, 16) / 8.0) * dx, x - family.deductible);
          break;
      }
    }
    knots.push_back({x, y});
  }
  const double tail = uniform_int(0, 8) / 8.0;
  return CededLossFunction::from_knots(std::move(knots), tail);
}

namespace {

// min(catch_slope * (x - delay)_+, (x - d)_+): flat until the delay, then a
// segment steeper than one that catches the deductible payoff and rides it.
// Requires delay > d >= 0 or delay == d > 0 handled by the caller staying
// strictly above the deductible.
CededLossFunction delayed_catch(double d, double delay, double catch_slope) {
  std::vector<CededLossFunction::Knot> knots{{0.0, 0.0}};
  if (delay > 0.0) knots.push_back({delay, 0.0});
  const double cross = (catch_slope * delay - d) / (catch_slope - 1.0);
  knots.push_back({cross, cross - d});
  return CededLossFunction::from_knots(std::move(knots), 1.0);
}

}  // namespace

std::vector<CededLossFunction> contract_grid(const ContractFamily& family, double x_max) {
  using Kind = ContractFamily::Kind;
  std::vector<CededLossFunction> grid;
  grid.push_back(zero_contract());

  const double d = family.kind == Kind::I1d ? family.deductible : 0.0;
  const double span = x_max - d;
  for (double rel : {0.0, 0.25, 0.5}) {
    const double base = d + rel * span;
    for (double share : {0.25, 0.5, 0.75, 1.0}) {
      grid.push_back(deductible_coinsurance(base, share));
    }
    for (double limit : {0.25 * span, 0.5 * span}) {
      if (limit > 0.0) grid.push_back(deductible_limit(base, limit));
    }
  }
  if (family.kind != Kind::I2) {
    for (double rel : {0.25, 0.5}) {
      for (double s : {1.5, 2.0}) {
        const double delay = d + rel * span;
        if (delay > 0.0) grid.push_back(delayed_catch(d, delay, s));
      }
    }
  }
  if (family.kind == Kind::I0) {
    // one genuinely non-monotone member
    grid.push_back(CededLossFunction::from_knots(
        {{0.0, 0.0}, {0.5 * x_max, 0.5 * x_max}, {0.75 * x_max, 0.125 * x_max}}, 0.0));
  }

  // keep only exact members of the requested family
  std::vector<CededLossFunction> kept;
  for (auto& f : grid) {
    if (member_of(f, family, x_max).member) kept.push_back(std::move(f));
  }
  return kept;
}

}  // namespace riskopt
