#include "riskopt/contracts.hpp"

#include <algorithm>
#include <cmath>

namespace riskopt {

CededLossFunction CededLossFunction::from_knots(std::vector<Knot> knots, double tail_slope) {
  if (knots.empty()) {
    throw Error(ErrorKind::ParameterOutOfRange, "contract needs at least one knot");
  }
  if (!std::isfinite(tail_slope)) {
    throw Error(ErrorKind::NonFiniteValue, "contract tail slope must be finite");
  }
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i].x) || !std::isfinite(knots[i].y)) {
      throw Error(ErrorKind::NonFiniteValue, "contract knots must be finite");
    }
    if (knots[i].y < 0.0) {
      throw Error(ErrorKind::ParameterOutOfRange, "contract values must be nonnegative");
    }
    if (i > 0 && !(knots[i].x > knots[i - 1].x)) {
      throw Error(ErrorKind::ParameterOutOfRange, "contract knots must increase in x");
    }
  }
  if (knots.front().x != 0.0) {
    throw Error(ErrorKind::ParameterOutOfRange, "contract must start at x = 0");
  }
  return CededLossFunction(std::move(knots), tail_slope);
}

double CededLossFunction::operator()(double x) const {
  if (x < 0.0) {
    throw Error(ErrorKind::NegativeArgument, "contracts are defined for x >= 0");
  }
  const Knot& last = knots_.back();
  if (x >= last.x) return last.y + tail_slope_ * (x - last.x);
  auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                             [](double v, const Knot& k) { return v < k.x; });
  const Knot& hi = *it;
  const Knot& lo = *(it - 1);
  if (x == lo.x) return lo.y;
  return lo.y + (x - lo.x) * (hi.y - lo.y) / (hi.x - lo.x);
}

CededLossFunction zero_contract() {
  return CededLossFunction::from_knots({{0.0, 0.0}}, 0.0);
}

CededLossFunction identity_contract() {
  return CededLossFunction::from_knots({{0.0, 0.0}}, 1.0);
}

CededLossFunction deductible_coinsurance(double deductible, double share) {
  if (deductible < 0.0) {
    throw Error(ErrorKind::ParameterOutOfRange, "deductible must be nonnegative");
  }
  if (share < 0.0 || share > 1.0) {
    throw Error(ErrorKind::ParameterOutOfRange, "coinsurance share must lie in [0,1]");
  }
  std::vector<CededLossFunction::Knot> knots{{0.0, 0.0}};
  if (deductible > 0.0) knots.push_back({deductible, 0.0});
  return CededLossFunction::from_knots(std::move(knots), share);
}

CededLossFunction deductible_limit(double deductible, double limit) {
  if (deductible < 0.0 || limit < 0.0) {
    throw Error(ErrorKind::ParameterOutOfRange, "deductible and limit must be nonnegative");
  }
  std::vector<CededLossFunction::Knot> knots{{0.0, 0.0}};
  if (limit > 0.0) {
    if (deductible > 0.0) knots.push_back({deductible, 0.0});
    knots.push_back({deductible + limit, limit});
  }
  return CededLossFunction::from_knots(std::move(knots), 0.0);
}

ContractFamily ContractFamily::i1d(double d) {
  if (d < 0.0) {
    throw Error(ErrorKind::ParameterOutOfRange, "deductible must be nonnegative");
  }
  return {Kind::I1d, d};
}

namespace {

// Segment slopes of f restricted to [0, x_max], paired with the segment
// midpoint used as the reported violation location.
struct Segment {
  double slope;
  double report_at;
};

std::vector<Segment> segments_within(const CededLossFunction& f, double x_max) {
  const auto& knots = f.knots();
  std::vector<Segment> out;
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (knots[i - 1].x >= x_max) break;
    const double hi = std::min(knots[i].x, x_max);
    out.push_back({(knots[i].y - knots[i - 1].y) / (knots[i].x - knots[i - 1].x),
                   0.5 * (knots[i - 1].x + hi)});
  }
  if (knots.back().x < x_max) {
    out.push_back({f.tail_slope(), 0.5 * (knots.back().x + x_max)});
  }
  return out;
}

std::vector<double> breakpoints_within(const CededLossFunction& f, double x_max,
                                       std::optional<double> extra) {
  std::vector<double> pts;
  for (const auto& k : f.knots()) {
    if (k.x <= x_max) pts.push_back(k.x);
  }
  pts.push_back(x_max);
  if (extra && *extra >= 0.0 && *extra <= x_max) pts.push_back(*extra);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

MembershipResult member_of(const CededLossFunction& f, const ContractFamily& family,
                           double x_max) {
  using Kind = ContractFamily::Kind;

  // Bound checks at breakpoints are exact: f, the zero bound, the identity
  // bound, and the deductible payoff are all linear between breakpoints.
  std::optional<double> extra;
  if (family.kind == Kind::I1d) extra = family.deductible;
  for (double x : breakpoints_within(f, x_max, extra)) {
    const double y = f(x);
    if (y < 0.0 || y > x) return {false, x};
    if (family.kind == Kind::I1d && y > std::max(x - family.deductible, 0.0)) {
      return {false, x};
    }
  }
  if (family.kind == Kind::I0) return {true, std::nullopt};

  for (const Segment& s : segments_within(f, x_max)) {
    if (s.slope < 0.0) return {false, s.report_at};
    if (family.kind == Kind::I2 && s.slope > 1.0) return {false, s.report_at};
  }
  return {true, std::nullopt};
}

namespace {

void require_nonnegative(const DiscreteDistribution& loss) {
  if (!loss.nonnegative()) {
    throw Error(ErrorKind::NotNonnegativeLoss, "loss support must be nonnegative");
  }
}

}  // namespace

DiscreteDistribution ceded(const CededLossFunction& f, const DiscreteDistribution& loss) {
  require_nonnegative(loss);
  return transform(loss, [&f](double x) { return f(x); });
}

DiscreteDistribution retained(const CededLossFunction& f, const DiscreteDistribution& loss) {
  require_nonnegative(loss);
  return transform(loss, [&f](double x) { return x - f(x); });
}

JointSample split_joint(const CededLossFunction& f, const DiscreteDistribution& loss) {
  require_nonnegative(loss);
  std::vector<JointAtom> atoms;
  atoms.reserve(loss.size());
  for (const Atom& a : loss.atoms()) {
    const double paid = f(a.value);
    atoms.push_back({paid, a.value - paid, a.prob});
  }
  return JointSample::from_atoms(std::move(atoms));
}

}  // namespace riskopt
