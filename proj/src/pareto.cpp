#include "riskopt/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace riskopt {

namespace {

constexpr double kArgminTol = 1e-9;
constexpr double kFeasTol = 1e-12;

std::vector<std::size_t> sorted_indices(const std::vector<double>& v, bool ascending) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&v, ascending](std::size_t a, std::size_t b) {
    return ascending ? v[a] < v[b] : v[a] > v[b];
  });
  return idx;
}

double vec_mean(const std::vector<double>& values, const std::vector<double>& probs) {
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) acc += values[i] * probs[i];
  return acc;
}

double vec_es(const std::vector<double>& values, const std::vector<double>& probs,
              double level) {
  if (!(level >= 0.0 && level < 1.0)) {
    throw Error(ErrorKind::InvalidLevel, "tail level must lie in [0,1)");
  }
  const double tail = 1.0 - level;
  double need = tail;
  double acc = 0.0;
  for (std::size_t i : sorted_indices(values, false)) {
    const double w = std::min(probs[i], need);
    acc += w * values[i];
    need -= w;
    if (need <= 0.0) break;
  }
  return acc / tail;
}

double vec_left_es(const std::vector<double>& values, const std::vector<double>& probs,
                   double level) {
  if (!(level > 0.0 && level <= 1.0)) {
    throw Error(ErrorKind::InvalidLevel, "tail level must lie in (0,1]");
  }
  double need = level;
  double acc = 0.0;
  for (std::size_t i : sorted_indices(values, true)) {
    const double w = std::min(probs[i], need);
    acc += w * values[i];
    need -= w;
    if (need <= 0.0) break;
  }
  return acc / level;
}

double vec_var(const std::vector<double>& values, const std::vector<double>& probs,
               double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(ErrorKind::InvalidLevel, "quantile level must lie in (0,1)");
  }
  double cum = 0.0;
  double last = 0.0;
  for (std::size_t i : sorted_indices(values, true)) {
    cum += probs[i];
    last = values[i];
    if (cum >= level) return values[i];
  }
  return last;
}

double vec_choquet(const DistortionFunction& h, const std::vector<double>& values,
                   const std::vector<double>& probs) {
  const auto order = sorted_indices(values, true);
  double acc = 0.0;
  double cum = 0.0;
  double h_prev = h.at_one();
  for (std::size_t k = 0; k < order.size(); ++k) {
    cum += probs[order[k]];
    const double survival = (k + 1 == order.size()) ? 0.0 : std::clamp(1.0 - cum, 0.0, 1.0);
    const double h_cur = h(survival);
    acc += values[order[k]] * (h_prev - h_cur);
    h_prev = h_cur;
  }
  return acc;
}

double vec_value(const RiskMeasure& m, const std::vector<double>& values,
                 const std::vector<double>& probs) {
  return std::visit(
      [&](const auto& mm) -> double {
        using T = std::decay_t<decltype(mm)>;
        if constexpr (std::is_same_v<T, Mean>) {
          return vec_mean(values, probs);
        } else if constexpr (std::is_same_v<T, ValueAtRisk>) {
          return vec_var(values, probs, mm.level);
        } else if constexpr (std::is_same_v<T, ExpectedShortfall>) {
          return vec_es(values, probs, mm.level);
        } else if constexpr (std::is_same_v<T, LeftExpectedShortfall>) {
          return vec_left_es(values, probs, mm.level);
        } else if constexpr (std::is_same_v<T, DistortionMeasure>) {
          return vec_choquet(mm.h, values, probs);
        } else {
          return mm.weight * vec_es(values, probs, mm.level) +
                 (1.0 - mm.weight) * vec_mean(values, probs);
        }
      },
      m);
}

void add_es_weights(const std::vector<double>& values, const std::vector<double>& probs,
                    double level, double coeff, std::vector<double>& out) {
  const double tail = 1.0 - level;
  double need = tail;
  for (std::size_t i : sorted_indices(values, false)) {
    const double w = std::min(probs[i], need);
    out[i] += coeff * w / tail;
    need -= w;
    if (need <= 0.0) break;
  }
}

void add_choquet_weights(const DistortionFunction& h, const std::vector<double>& values,
                         const std::vector<double>& probs, double coeff,
                         std::vector<double>& out) {
  const auto order = sorted_indices(values, true);
  double cum = 0.0;
  double h_prev = h.at_one();
  for (std::size_t k = 0; k < order.size(); ++k) {
    cum += probs[order[k]];
    const double survival = (k + 1 == order.size()) ? 0.0 : std::clamp(1.0 - cum, 0.0, 1.0);
    const double h_cur = h(survival);
    out[order[k]] += coeff * (h_prev - h_cur);
    h_prev = h_cur;
  }
}

// Active dual weights w with rho(v) = <w, v>; a valid subgradient for the
// convex measure kinds the solver accepts.
std::vector<double> measure_weights(const RiskMeasure& m, const std::vector<double>& values,
                                    const std::vector<double>& probs) {
  std::vector<double> out(values.size(), 0.0);
  std::visit(
      [&](const auto& mm) {
        using T = std::decay_t<decltype(mm)>;
        if constexpr (std::is_same_v<T, Mean>) {
          for (std::size_t i = 0; i < probs.size(); ++i) out[i] = probs[i];
        } else if constexpr (std::is_same_v<T, ExpectedShortfall>) {
          add_es_weights(values, probs, mm.level, 1.0, out);
        } else if constexpr (std::is_same_v<T, DistortionMeasure>) {
          add_choquet_weights(mm.h, values, probs, 1.0, out);
        } else if constexpr (std::is_same_v<T, EsMeanMixture>) {
          add_es_weights(values, probs, mm.level, mm.weight, out);
          for (std::size_t i = 0; i < probs.size(); ++i) out[i] += (1.0 - mm.weight) * probs[i];
        } else {
          throw Error(ErrorKind::NonConvexMeasure, "no subgradient for a non-convex measure");
        }
      },
      m);
  return out;
}

struct FamilySpec {
  bool monotone = false;
  bool lipschitz = false;
  std::vector<double> upper;
};

FamilySpec make_family_spec(const ContractFamily& family, const std::vector<double>& xs) {
  FamilySpec spec;
  spec.monotone = family.kind != ContractFamily::Kind::I0;
  spec.lipschitz = family.kind == ContractFamily::Kind::I2;
  spec.upper.reserve(xs.size());
  for (double x : xs) {
    spec.upper.push_back(family.kind == ContractFamily::Kind::I1d
                             ? std::max(x - family.deductible, 0.0)
                             : x);
  }
  return spec;
}

bool feasible(const std::vector<double>& g, const std::vector<double>& xs,
              const FamilySpec& spec, double eps) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] < -eps || g[i] > spec.upper[i] + eps) return false;
    if (i > 0) {
      if (spec.monotone && g[i] < g[i - 1] - eps) return false;
      if (spec.lipschitz && g[i] - g[i - 1] > xs[i] - xs[i - 1] + eps) return false;
    }
  }
  if (spec.lipschitz && !g.empty() && g[0] > xs[0] + eps) return false;
  return true;
}

// Unweighted pool-adjacent-violators: nearest nondecreasing sequence.
std::vector<double> isotonic(const std::vector<double>& v) {
  std::vector<double> level;
  std::vector<double> weight;
  for (double x : v) {
    level.push_back(x);
    weight.push_back(1.0);
    while (level.size() >= 2 && level[level.size() - 1] < level[level.size() - 2]) {
      const double w = weight[weight.size() - 1] + weight[weight.size() - 2];
      const double m = (level[level.size() - 1] * weight[weight.size() - 1] +
                        level[level.size() - 2] * weight[weight.size() - 2]) /
                       w;
      level.pop_back();
      weight.pop_back();
      level.back() = m;
      weight.back() = w;
    }
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < level.size(); ++i) {
    for (int k = 0; k < static_cast<int>(weight[i]); ++k) out.push_back(level[i]);
  }
  return out;
}

struct Workspace {
  std::vector<double> xs;
  std::vector<double> ps;
  const RiskMeasure* insured = nullptr;
  const RiskMeasure* insurer = nullptr;
  FamilySpec spec;

  double value(const std::vector<double>& g) const {
    std::vector<double> kept(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) kept[i] = xs[i] - g[i];
    return vec_value(*insured, kept, ps) + vec_value(*insurer, g, ps);
  }

  std::vector<double> subgradient(const std::vector<double>& g) const {
    std::vector<double> kept(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) kept[i] = xs[i] - g[i];
    const auto w_insured = measure_weights(*insured, kept, ps);
    auto grad = measure_weights(*insurer, g, ps);
    for (std::size_t i = 0; i < grad.size(); ++i) grad[i] -= w_insured[i];
    return grad;
  }

  // Projection onto the feasible set. For monotone families the bounds are
  // themselves nondecreasing, so clipping the isotonic regression is the
  // exact Euclidean projection.
  void project(std::vector<double>& g) const {
    if (spec.monotone) {
      auto iso = isotonic(g);
      for (std::size_t i = 0; i < g.size(); ++i) {
        g[i] = std::clamp(iso[i], 0.0, spec.upper[i]);
      }
    } else {
      for (std::size_t i = 0; i < g.size(); ++i) {
        g[i] = std::clamp(g[i], 0.0, spec.upper[i]);
      }
    }
  }
};

double golden_min(const std::function<double(double)>& fn, double lo, double hi) {
  constexpr double kRatio = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double x1 = b - kRatio * (b - a);
  double x2 = a + kRatio * (b - a);
  double f1 = fn(x1);
  double f2 = fn(x2);
  for (int it = 0; it < 70 && b - a > 1e-13 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kRatio * (b - a);
      f1 = fn(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kRatio * (b - a);
      f2 = fn(x2);
    }
  }
  return 0.5 * (a + b);
}

// Cyclic coordinate refinement; returns the improvement of the final sweep.
double polish(const Workspace& w, std::vector<double>& g, int passes) {
  const std::size_t n = g.size();
  double last_gain = 0.0;
  for (int pass = 0; pass < passes; ++pass) {
    const double before = w.value(g);
    for (std::size_t i = 0; i < n; ++i) {
      double lo = 0.0;
      double hi = w.spec.upper[i];
      if (w.spec.monotone) {
        if (i > 0) lo = std::max(lo, g[i - 1]);
        if (i + 1 < n) hi = std::min(hi, g[i + 1]);
      }
      if (w.spec.lipschitz) {
        const double prev_x = i > 0 ? w.xs[i - 1] : 0.0;
        const double prev_g = i > 0 ? g[i - 1] : 0.0;
        hi = std::min(hi, prev_g + (w.xs[i] - prev_x));
        if (i + 1 < n) lo = std::max(lo, g[i + 1] - (w.xs[i + 1] - w.xs[i]));
      }
      if (hi - lo < 1e-15) continue;
      auto coord = [&](double v) {
        std::vector<double> trial = g;
        trial[i] = v;
        return w.value(trial);
      };
      double best_v = g[i];
      double best_f = w.value(g);
      for (double cand : {lo, hi, golden_min(coord, lo, hi)}) {
        const double f = coord(cand);
        if (f < best_f) {
          best_f = f;
          best_v = cand;
        }
      }
      g[i] = best_v;
    }
    last_gain = before - w.value(g);
    if (last_gain <= 1e-14) break;
  }
  return std::max(last_gain, 0.0);
}

void require_convex(const RiskMeasure& m, const char* side) {
  if (!is_convex_measure(m)) {
    throw Error(ErrorKind::NonConvexMeasure,
                std::string(side) + " measure " + describe(m) + " is not convex");
  }
}

}  // namespace

double premium(const ParetoProblem& prob, const CededLossFunction& f) {
  return std::visit(
      [&](const auto& rule) -> double {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, ExpectedValuePremium>) {
          if (rule.loading < 0.0) {
            throw Error(ErrorKind::ParameterOutOfRange, "premium loading must be nonnegative");
          }
          return (1.0 + rule.loading) * mean(ceded(f, prob.loss));
        } else {
          return evaluate(prob.insurer, ceded(f, prob.loss));
        }
      },
      prob.premium);
}

double objective(const ParetoProblem& prob, const CededLossFunction& f) {
  return evaluate(prob.insured, retained(f, prob.loss)) +
         evaluate(prob.insurer, ceded(f, prob.loss));
}

double objective_with_premium(const ParetoProblem& prob, const CededLossFunction& f) {
  const double pi = premium(prob, f);
  return evaluate(prob.insured, shift(retained(f, prob.loss), pi)) +
         evaluate(prob.insurer, shift(ceded(f, prob.loss), -pi));
}

bool family_feasible(const ContractFamily& family, const DiscreteDistribution& loss,
                     const std::vector<double>& ceded_values, double tol) {
  std::vector<double> xs;
  xs.reserve(loss.size());
  for (const Atom& a : loss.atoms()) xs.push_back(a.value);
  return feasible(ceded_values, xs, make_family_spec(family, xs), tol);
}

CededLossFunction to_contract(const ParetoProblem& prob,
                              const std::vector<double>& ceded_values) {
  const auto& atoms = prob.loss.atoms();
  std::vector<double> xs{0.0};
  if (prob.family.kind == ContractFamily::Kind::I1d && prob.family.deductible > 0.0) {
    xs.push_back(prob.family.deductible);
  }
  for (const Atom& a : atoms) xs.push_back(a.value);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<CededLossFunction::Knot> knots;
  std::size_t ai = 0;
  for (double x : xs) {
    double y = 0.0;
    while (ai < atoms.size() && atoms[ai].value < x) ++ai;
    if (ai < atoms.size() && atoms[ai].value == x) {
      y = std::max(ceded_values[ai], 0.0);
    }
    knots.push_back({x, y});
  }
  return CededLossFunction::from_knots(std::move(knots), 0.0);
}

SolveResult solve(const ParetoProblem& prob, const SolveSettings& settings) {
  const std::size_t n = prob.loss.size();
  if (n > 64) {
    throw Error(ErrorKind::TooLarge, "solver supports at most 64 support points");
  }
  require_convex(prob.insured, "insured");
  require_convex(prob.insurer, "insurer");

  Workspace w;
  w.insured = &prob.insured;
  w.insurer = &prob.insurer;
  for (const Atom& a : prob.loss.atoms()) {
    w.xs.push_back(a.value);
    w.ps.push_back(a.prob);
  }
  w.spec = make_family_spec(prob.family, w.xs);

  // warm start: best of the extreme and midpoint payment vectors
  std::vector<std::vector<double>> starts;
  starts.emplace_back(n, 0.0);
  starts.push_back(w.spec.upper);
  {
    std::vector<double> half(n);
    for (std::size_t i = 0; i < n; ++i) half[i] = 0.5 * w.spec.upper[i];
    starts.push_back(std::move(half));
  }
  std::vector<double> g = starts.front();
  double best_val = w.value(g);
  for (const auto& s : starts) {
    const double v = w.value(s);
    if (v < best_val) {
      best_val = v;
      g = s;
    }
  }
  std::vector<double> best_g = g;

  const double scale =
      settings.step_scale > 0.0 ? settings.step_scale : std::max(0.5 * w.xs.back(), 0.5);

  if (w.spec.lipschitz) {
    // slope parametrization: increments over the segments from the origin,
    // each boxed in [0, segment length]; feasibility becomes a plain clamp
    std::vector<double> dx(n);
    std::vector<double> inc(n);
    for (std::size_t i = 0; i < n; ++i) {
      dx[i] = w.xs[i] - (i > 0 ? w.xs[i - 1] : 0.0);
      inc[i] = g[i] - (i > 0 ? g[i - 1] : 0.0);
    }
    std::vector<double> cur(n);
    for (int k = 1; k <= settings.iterations; ++k) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += inc[i];
        cur[i] = acc;
      }
      const auto grad_g = w.subgradient(cur);
      std::vector<double> grad_inc(n, 0.0);
      double suffix = 0.0;
      for (std::size_t i = n; i-- > 0;) {
        suffix += grad_g[i];
        grad_inc[i] = suffix;
      }
      double norm = 0.0;
      for (double v : grad_inc) norm += v * v;
      norm = std::sqrt(norm);
      if (norm < 1e-15) break;
      const double step = scale / (norm * std::sqrt(static_cast<double>(k)));
      for (std::size_t i = 0; i < n; ++i) {
        inc[i] = std::clamp(inc[i] - step * grad_inc[i], 0.0, dx[i]);
      }
      double acc2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc2 += inc[i];
        cur[i] = acc2;
      }
      const double val = w.value(cur);
      if (val < best_val) {
        best_val = val;
        best_g = cur;
      }
    }
  } else {
    for (int k = 1; k <= settings.iterations; ++k) {
      const auto grad = w.subgradient(g);
      double norm = 0.0;
      for (double v : grad) norm += v * v;
      norm = std::sqrt(norm);
      if (norm < 1e-15) break;
      const double step = scale / (norm * std::sqrt(static_cast<double>(k)));
      for (std::size_t i = 0; i < n; ++i) g[i] -= step * grad[i];
      w.project(g);
      const double val = w.value(g);
      if (val < best_val) {
        best_val = val;
        best_g = g;
      }
    }
  }

  const double residual = polish(w, best_g, settings.polish_passes);
  best_val = w.value(best_g);

  SolveResult result;
  result.method = SolveMethod::Subgradient;
  result.certified_gap = residual;
  result.ceded_values = best_g;
  result.optimal_value = objective(prob, to_contract(prob, best_g));

  if (settings.grid_certificate && n <= 5) {
    const auto oracle = brute_force_oracle(prob, std::clamp(settings.grid_steps, 1, 21));
    result.oracle_value = oracle.optimal_value;
    if (oracle.optimal_value < result.optimal_value) {
      result.ceded_values = oracle.ceded_values;
      result.optimal_value = oracle.optimal_value;
      result.method = SolveMethod::GridOracle;
    }
    result.certified_gap = std::max(0.0, result.optimal_value - oracle.optimal_value);
  }
  return result;
}

SolveResult brute_force_oracle(const ParetoProblem& prob, int steps_per_coordinate) {
  const std::size_t n = prob.loss.size();
  if (n > 5) {
    throw Error(ErrorKind::TooLarge, "oracle enumerates at most 5 support points");
  }
  if (steps_per_coordinate < 1 || steps_per_coordinate > 21) {
    throw Error(ErrorKind::TooLarge, "oracle grid steps must lie in [1,21]");
  }
  Workspace w;
  w.insured = &prob.insured;
  w.insurer = &prob.insurer;
  for (const Atom& a : prob.loss.atoms()) {
    w.xs.push_back(a.value);
    w.ps.push_back(a.prob);
  }
  w.spec = make_family_spec(prob.family, w.xs);

  const int m = steps_per_coordinate;
  std::vector<double> g(n, 0.0);
  std::vector<double> best_g;
  double best_val = std::numeric_limits<double>::infinity();

  // depth-first odometer in lexicographic order; the first strict minimum is
  // therefore the lexicographically smallest optimal vector
  auto recurse = [&](auto&& self, std::size_t depth) -> void {
    if (depth == n) {
      const double val = w.value(g);
      if (val < best_val) {
        best_val = val;
        best_g = g;
      }
      return;
    }
    for (int k = 0; k <= m; ++k) {
      const double v = w.xs[depth] * k / m;
      if (v > w.spec.upper[depth] + kFeasTol) break;
      if (depth > 0) {
        if (w.spec.monotone && v < g[depth - 1] - kFeasTol) continue;
        if (w.spec.lipschitz && v - g[depth - 1] > w.xs[depth] - w.xs[depth - 1] + kFeasTol) {
          break;
        }
      }
      g[depth] = v;
      self(self, depth + 1);
    }
  };
  recurse(recurse, 0);

  SolveResult result;
  result.method = SolveMethod::GridOracle;
  result.certified_gap = 0.0;
  result.ceded_values = best_g;
  result.optimal_value = objective(prob, to_contract(prob, best_g));
  result.oracle_value = result.optimal_value;
  return result;
}

ParetoCheck is_pareto_optimal(const ParetoProblem& prob, const CededLossFunction& f,
                              const std::vector<CededLossFunction>& candidates) {
  const double pi_f = premium(prob, f);
  const double insured_f = evaluate(prob.insured, shift(retained(f, prob.loss), pi_f));
  const double insurer_f = evaluate(prob.insurer, shift(ceded(f, prob.loss), -pi_f));
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& gfn = candidates[i];
    const double pi_g = premium(prob, gfn);
    const double insured_g = evaluate(prob.insured, shift(retained(gfn, prob.loss), pi_g));
    const double insurer_g = evaluate(prob.insurer, shift(ceded(gfn, prob.loss), -pi_g));
    const bool weakly_better =
        insured_g <= insured_f + kArgminTol && insurer_g <= insurer_f + kArgminTol;
    const bool strictly_somewhere =
        insured_g < insured_f - kArgminTol || insurer_g < insurer_f - kArgminTol;
    if (weakly_better && strictly_somewhere) return {false, i};
  }
  return {true, std::nullopt};
}

bool check_prop1_equivalence(const ParetoProblem& prob, const CededLossFunction& f,
                             const std::vector<CededLossFunction>& candidates,
                             const std::vector<PremiumRule>& premiums) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) best = std::min(best, objective(prob, c));
  const bool minimizes = objective(prob, f) <= best + kArgminTol;

  ParetoProblem psi_based = prob;
  psi_based.premium = InsurerPremium{};
  const bool pareto_psi = is_pareto_optimal(psi_based, f, candidates).optimal;

  bool pareto_all = true;
  for (const auto& rule : premiums) {
    ParetoProblem variant = prob;
    variant.premium = rule;
    if (!is_pareto_optimal(variant, f, candidates).optimal) {
      pareto_all = false;
      break;
    }
  }
  return minimizes == pareto_psi && pareto_psi == pareto_all;
}

std::vector<std::size_t> argmin_set(const ParetoProblem& prob,
                                    const std::vector<CededLossFunction>& candidates,
                                    bool with_premium, double tol) {
  std::vector<double> values;
  values.reserve(candidates.size());
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) {
    const double v = with_premium ? objective_with_premium(prob, c) : objective(prob, c);
    values.push_back(v);
    best = std::min(best, v);
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= best + tol) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> menu(const std::vector<DiscreteDistribution>& losses,
                              const RiskMeasure& insurer,
                              const std::vector<CededLossFunction>& candidates,
                              double tol) {
  std::vector<char> keep(candidates.size(), 1);
  for (const auto& loss : losses) {
    std::vector<double> values;
    values.reserve(candidates.size());
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : candidates) {
      const double v = evaluate(insurer, retained(c, loss)) + evaluate(insurer, ceded(c, loss));
      values.push_back(v);
      best = std::min(best, v);
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (values[i] > best + tol) keep[i] = 0;
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i]) out.push_back(i);
  }
  if (out.empty()) {
    throw Error(ErrorKind::EmptyMenu, "no contract is optimal for every loss at this grid");
  }
  return out;
}

bool check_prop3_inclusion(const DiscreteDistribution& loss, const RiskMeasure& insured,
                           const RiskMeasure& insurer,
                           const std::vector<CededLossFunction>& candidates) {
  std::vector<DiscreteDistribution> tested{loss};
  for (const auto& c : candidates) {
    tested.push_back(ceded(c, loss));
    tested.push_back(retained(c, loss));
  }
  for (const auto& d : tested) {
    if (evaluate(insured, d) < evaluate(insurer, d) - 1e-12) {
      throw Error(ErrorKind::PrecedenceNotVerified,
                  "insured measure does not dominate the insurer measure on a tested law");
    }
  }

  ParetoProblem mixed{loss, insured, insurer, ContractFamily::i0(), ExpectedValuePremium{}};
  ParetoProblem pure{loss, insurer, insurer, ContractFamily::i0(), ExpectedValuePremium{}};
  const auto mixed_set = argmin_set(mixed, candidates, false);
  const auto pure_set = argmin_set(pure, candidates, false);
  return std::all_of(mixed_set.begin(), mixed_set.end(), [&pure_set](std::size_t i) {
    return std::find(pure_set.begin(), pure_set.end(), i) != pure_set.end();
  });
}

}  // namespace riskopt
