#include "riskopt/verify.hpp"

#include <algorithm>
#include <cmath>

#include "riskopt/dependence.hpp"
#include "riskopt/fixtures.hpp"
#include "riskopt/io.hpp"
#include "riskopt/pareto.hpp"

namespace riskopt {

using nlohmann::json;

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

json Report::to_json() const {
  json checks_json = json::array();
  for (const auto& c : checks) {
    checks_json.push_back({{"name", c.name},
                           {"pass", c.pass},
                           {"kind", c.kind},
                           {"detail", c.detail},
                           {"data", c.data}});
  }
  return json{{"suite", suite},   {"claim", claim},   {"seed", seed},
              {"trials", trials}, {"pass", pass()},   {"checks", std::move(checks_json)}};
}

namespace {

json split_witness(const DiscreteDistribution& loss, const CededLossFunction& f,
                   double lhs, double rhs) {
  return json{{"loss", distribution_to_json(loss)},
              {"contract", contract_to_json(f)},
              {"lhs", lhs},
              {"rhs", rhs}};
}

CheckResult evidence(const std::string& name, int failures, int trials, json first_witness) {
  CheckResult c;
  c.name = name;
  c.pass = failures == 0;
  c.kind = "evidence";
  c.detail = c.pass ? "no violation in " + std::to_string(trials) + " trials"
                    : std::to_string(failures) + " violations in " + std::to_string(trials) +
                          " trials";
  c.data = std::move(first_witness);
  return c;
}

}  // namespace

Report check_lipschitz_additivity(const DistortionFunction& h, int trials, std::uint64_t seed) {
  const auto traits = classify_distortion(h);
  if (!traits.concave || !traits.valid_distortion) {
    throw Error(ErrorKind::NotConcave, "need an increasing concave distortion function");
  }
  const RiskMeasure rho = DistortionMeasure{h};

  Report report;
  report.suite = "lipschitz-additivity";
  report.claim = "splits through 1-Lipschitz contracts are comonotone, so a concave "
                 "distortion value is additive over them and no contract beats it";
  report.seed = seed;
  report.trials = trials;

  int additivity_failures = 0;
  int floor_failures = 0;
  json additivity_witness;
  json floor_witness;
  for (int t = 0; t < trials; ++t) {
    FixtureGen gen = FixtureGen::stream(seed, static_cast<std::uint64_t>(t));
    const auto loss = gen.loss();
    const double x_max = loss.max_value() + 1.0;
    const double base = evaluate(rho, loss);

    const auto f = gen.contract(ContractFamily::i2(), x_max);
    const double total = evaluate(rho, ceded(f, loss)) + evaluate(rho, retained(f, loss));
    if (std::abs(total - base) > 1e-10 && additivity_failures++ == 0) {
      additivity_witness = split_witness(loss, f, total, base);
    }

    const auto any = gen.contract(ContractFamily::i0(), x_max);
    const double objective_any =
        evaluate(rho, ceded(any, loss)) + evaluate(rho, retained(any, loss));
    if (objective_any < base - 1e-10 && floor_failures++ == 0) {
      floor_witness = split_witness(loss, any, objective_any, base);
    }
  }
  report.checks.push_back(
      evidence("additivity-over-lipschitz-splits", additivity_failures, trials,
               std::move(additivity_witness)));
  report.checks.push_back(
      evidence("objective-floor", floor_failures, trials, std::move(floor_witness)));
  return report;
}

double lipschitz_violation_gap(const CededLossFunction& f, const DistortionFunction& h,
                               double x, double y) {
  if (!(x >= 0.0 && y > x)) {
    throw Error(ErrorKind::ParameterOutOfRange, "need 0 <= x < y");
  }
  if (std::abs(f(y) - f(x)) <= y - x) {
    throw Error(ErrorKind::NotAViolation, "contract is 1-Lipschitz between the two points");
  }
  const RiskMeasure rho = DistortionMeasure{h};
  const auto loss = canonicalize({{x, 0.5}, {y, 0.5}});
  return evaluate(rho, retained(f, loss)) + evaluate(rho, ceded(f, loss)) -
         evaluate(rho, loss);
}

namespace {

Report suite_thm1_gap() {
  Report report;
  report.suite = "thm1-gap";
  report.claim = "a contract that grows faster than the loss opens a strict gap over the "
                 "bare risk value on a two-point loss";
  report.trials = 1;

  const auto h = mixture_distortion(0.5, 1.0);  // tail mean at level 1/2

  const auto steep = CededLossFunction::from_knots({{0.0, 0.0}, {1.9, 0.0}, {2.0, 2.0}}, 0.0);
  const double gap = lipschitz_violation_gap(steep, h, 1.9, 2.0);
  report.checks.push_back({"steep-contract-gap",
                           std::abs(gap - 1.9) <= 1e-9,
                           "exact",
                           "gap = " + format_compact(gap) + ", expected 1.9",
                           json{{"gap", gap}}});

  // closed-form tail mean of the even two-point law on {0,1}
  const auto two_point = canonicalize({{0.0, 0.5}, {1.0, 0.5}});
  bool formula_ok = true;
  json values = json::array();
  for (double t : {0.1, 0.25, 0.4}) {
    const double direct = es(two_point, t);
    const double closed = 1.0 / (2.0 - 2.0 * t);
    values.push_back({{"level", t}, {"direct", direct}, {"closed_form", closed}});
    if (std::abs(direct - closed) > 1e-12) formula_ok = false;
  }
  report.checks.push_back({"two-point-tail-mean-closed-form", formula_ok, "exact",
                           "fractional-atom tail mean against ((1-2t)x+y)/(2-2t)",
                           std::move(values)});

  const auto decreasing =
      CededLossFunction::from_knots({{0.0, 0.0}, {1.0, 1.0}, {1.25, 0.5}}, 0.0);
  const double gap_dec = lipschitz_violation_gap(decreasing, h, 1.0, 1.25);
  report.checks.push_back({"decreasing-contract-gap",
                           gap_dec > 1e-9,
                           "exact",
                           "gap = " + format_compact(gap_dec),
                           json{{"gap", gap_dec}}});
  return report;
}

}  // namespace

Report check_deductible_additivity(double level, double deductible, int trials,
                                   std::uint64_t seed) {
  if (!(level >= 0.0 && level < 1.0)) {
    throw Error(ErrorKind::InvalidLevel, "level must lie in [0,1)");
  }
  if (deductible < 0.0) {
    throw Error(ErrorKind::ParameterOutOfRange, "deductible must be nonnegative");
  }

  Report report;
  report.suite = "deductible-additivity";
  report.claim = "deductible-class splits of losses at the matching level share a tail "
                 "event, so the tail mean and its mean mixtures are additive over them";
  report.seed = seed;
  report.trials = trials;

  const RiskMeasure tail_mean = ExpectedShortfall{level};
  const std::vector<double> mixture_weights{0.0, 0.5, 1.0, 2.0};

  int additivity_failures = 0;
  int tail_event_failures = 0;
  int mixture_failures = 0;
  json additivity_witness;
  json tail_witness;
  json mixture_witness;

  for (int t = 0; t < trials; ++t) {
    FixtureGen gen = FixtureGen::stream(seed, static_cast<std::uint64_t>(t));
    const auto loss = gen.loss_at_level(deductible, level);
    const auto f = gen.contract(ContractFamily::i1d(deductible), loss.max_value() + 1.0);

    const double base = evaluate(tail_mean, loss);
    const double total =
        evaluate(tail_mean, ceded(f, loss)) + evaluate(tail_mean, retained(f, loss));
    if (std::abs(total - base) > 1e-10 && additivity_failures++ == 0) {
      additivity_witness = split_witness(loss, f, total, base);
    }

    if (level > 0.0) {
      const auto tail = find_common_p_tail(split_joint(f, loss), level);
      if (!tail.exists && tail_event_failures++ == 0) {
        tail_witness = split_witness(loss, f, 0.0, 0.0);
      }
      for (double w : mixture_weights) {
        const RiskMeasure mix = EsMeanMixture{level, w};
        const double mix_base = evaluate(mix, loss);
        const double mix_total =
            evaluate(mix, ceded(f, loss)) + evaluate(mix, retained(f, loss));
        if (std::abs(mix_total - mix_base) > 1e-10 && mixture_failures++ == 0) {
          mixture_witness = split_witness(loss, f, mix_total, mix_base);
        }
      }
    }
  }

  report.checks.push_back(evidence("tail-mean-additivity", additivity_failures, trials,
                                   std::move(additivity_witness)));
  if (level > 0.0) {
    report.checks.push_back(
        evidence("common-tail-event", tail_event_failures, trials, std::move(tail_witness)));
    report.checks.push_back(
        evidence("mixture-additivity", mixture_failures, trials, std::move(mixture_witness)));
  }
  return report;
}

MixtureProbeResult mixture_level_probe(const RiskMeasure& measure, double level,
                                       double deductible, int trials, std::uint64_t seed) {
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(ErrorKind::InvalidLevel, "probe level must lie in (0,1)");
  }
  const auto family = ContractFamily::i1d(deductible);
  const auto grid = contract_grid(family, 6.0);
  for (int t = 0; t < trials; ++t) {
    FixtureGen gen = FixtureGen::stream(seed, static_cast<std::uint64_t>(t));
    const auto loss = gen.loss_at_level(deductible, level);
    std::vector<const CededLossFunction*> candidates;
    for (const auto& f : grid) candidates.push_back(&f);
    const auto random_member = gen.contract(family, loss.max_value() + 1.0);
    candidates.push_back(&random_member);
    for (const auto* f : candidates) {
      const double base = evaluate(measure, loss);
      const double total =
          evaluate(measure, ceded(*f, loss)) + evaluate(measure, retained(*f, loss));
      if (total - base > 1e-9) {
        return {false, split_witness(loss, *f, total, base)};
      }
    }
  }
  return {true, std::nullopt};
}

Report check_mixture_axiom_ranges(double level, const std::vector<double>& weights,
                                  int trials, std::uint64_t seed) {
  Report report;
  report.suite = "mixture-axiom-ranges";
  report.claim = "the ES/mean mixture is convex exactly for nonnegative weights and "
                 "monotone exactly on the closed weight band; probes certify each "
                 "out-of-range weight";
  report.seed = seed;
  report.trials = trials;

  const auto ranges = mixture_lambda_ranges(level);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double w = weights[i];
    const auto traits = classify_distortion(mixture_distortion(level, w));
    const bool expect_convex = w >= ranges.convex_min;
    const bool expect_monotone = w >= ranges.monotone_min && w <= ranges.monotone_max;

    const std::string tag = format_compact(w);
    report.checks.push_back({"classification@" + tag,
                             traits.concave == expect_convex &&
                                 traits.increasing == expect_monotone,
                             "exact",
                             "distortion slopes classify concavity/monotonicity",
                             json{{"weight", w},
                                  {"concave", traits.concave},
                                  {"increasing", traits.increasing}}});

    const auto probe =
        axiom_probe(EsMeanMixture{level, w}, trials, seed ^ (0x9e37ULL * (i + 1)));
    const bool convexity_violated = probe.violated("convexity");
    const bool monotonicity_violated = probe.violated("monotonicity");

    json probe_json = axiom_report_to_json(probe);
    report.checks.push_back({"convexity@" + tag,
                             convexity_violated == !expect_convex,
                             expect_convex ? "evidence" : "certificate",
                             expect_convex ? "no convexity violation should appear"
                                           : "a convexity violation must be certified",
                             probe_json});
    report.checks.push_back({"monotonicity@" + tag,
                             monotonicity_violated == !expect_monotone,
                             expect_monotone ? "evidence" : "certificate",
                             expect_monotone ? "no monotonicity violation should appear"
                                             : "a monotonicity violation must be certified",
                             std::move(probe_json)});
  }
  return report;
}

Report check_tail_mean_identity(int trials, std::uint64_t seed) {
  Report report;
  report.suite = "tail-mean-identity";
  report.claim = "the tail mean and the lower tail mean average back to the mean, and "
                 "mixtures against the lower tail reparameterize to mixtures against "
                 "the mean";
  report.seed = seed;
  report.trials = trials;

  int identity_failures = 0;
  int reparam_failures = 0;
  json identity_witness;
  json reparam_witness;
  for (int t = 0; t < trials; ++t) {
    FixtureGen gen = FixtureGen::stream(seed, static_cast<std::uint64_t>(t));
    const auto loss = gen.loss();
    const double p = gen.dyadic_level();
    const double upper = es(loss, p);
    const double lower = left_es(loss, p);
    const double m = mean(loss);
    if (std::abs((1.0 - p) * upper + p * lower - m) > 1e-12 && identity_failures++ == 0) {
      identity_witness = json{{"loss", distribution_to_json(loss)}, {"level", p}};
    }

    const double lambda = gen.uniform_int(-16, 16) / 8.0;
    const double gamma = 1.0 - (1.0 - lambda) / p;
    const double via_lower = lambda * upper + (1.0 - lambda) * lower;
    const double via_mean = gamma * upper + (1.0 - gamma) * m;
    if (std::abs(via_lower - via_mean) > 1e-10 && reparam_failures++ == 0) {
      reparam_witness =
          json{{"loss", distribution_to_json(loss)}, {"level", p}, {"lambda", lambda}};
    }
  }
  report.checks.push_back(
      evidence("mean-split-identity", identity_failures, trials, std::move(identity_witness)));
  report.checks.push_back(
      evidence("mixture-reparameterization", reparam_failures, trials,
               std::move(reparam_witness)));
  return report;
}

namespace {

Report suite_thm1_if(const SuiteOptions& opts) {
  struct Named {
    const char* name;
    DistortionFunction h;
  };
  const std::vector<Named> distortions{
      {"tail-mean", mixture_distortion(0.5, 1.0)},
      {"identity", DistortionFunction::from_knots({{0.0, 0.0}, {1.0, 1.0}})},
      {"blend", DistortionFunction::from_knots({{0.0, 0.0}, {0.5, 0.75}, {1.0, 1.0}})},
  };
  Report report;
  report.suite = "thm1-if";
  report.seed = opts.seed;
  report.trials = opts.trials;
  for (const auto& [name, h] : distortions) {
    auto sub = check_lipschitz_additivity(h, opts.trials, opts.seed);
    report.claim = sub.claim;
    for (auto& c : sub.checks) {
      c.name = std::string(name) + "/" + c.name;
      report.checks.push_back(std::move(c));
    }
  }
  return report;
}

Report suite_thm2_probe(const SuiteOptions& opts) {
  Report report;
  report.suite = "thm2-probe";
  report.claim = "over deductible-class splits, level-matched ES/mean mixtures show no "
                 "strict excess while off-level tail means are caught by a witness";
  report.seed = opts.seed;
  report.trials = opts.trials;

  auto run_one = [&](const std::string& name, const RiskMeasure& m, bool expect_witness) {
    const auto res =
        mixture_level_probe(m, opts.level, opts.deductible, opts.trials, opts.seed);
    CheckResult c;
    c.name = name;
    c.kind = expect_witness ? "certificate" : "evidence";
    c.pass = res.consistent != expect_witness;
    c.detail = res.consistent
                   ? "no strict excess in " + std::to_string(opts.trials) + " trials"
                   : "strict excess witnessed";
    if (res.witness) c.data = *res.witness;
    report.checks.push_back(std::move(c));
  };

  if (opts.probe_measure) {
    run_one("probe/" + describe(*opts.probe_measure), *opts.probe_measure,
            opts.expect_witness.value_or(false));
    return report;
  }
  const double off_level = opts.level == 0.9 ? 0.5 : 0.9;
  run_one("matched-tail-mean", ExpectedShortfall{opts.level}, false);
  run_one("off-level-tail-mean", ExpectedShortfall{off_level}, true);
  run_one("mean", Mean{}, false);
  run_one("matched-mixture", EsMeanMixture{opts.level, 0.5}, false);
  return report;
}

Report suite_prop1(const SuiteOptions& opts) {
  Report report;
  report.suite = "prop1";
  report.claim = "on a candidate grid, minimizing the premium-free total risk coincides "
                 "with Pareto optimality under the insurer-measure premium and under "
                 "every premium rule";
  report.seed = opts.seed;
  report.trials = opts.trials;

  const std::vector<std::pair<RiskMeasure, RiskMeasure>> pairs{
      {ExpectedShortfall{0.5}, ExpectedShortfall{0.5}},
      {ExpectedShortfall{0.9}, Mean{}},
      {Mean{}, ExpectedShortfall{0.75}},
      {EsMeanMixture{0.5, 0.5}, ExpectedShortfall{0.5}},
  };
  const std::vector<PremiumRule> premiums{ExpectedValuePremium{0.0},
                                          ExpectedValuePremium{0.2}, InsurerPremium{}};

  int equivalence_failures = 0;
  int independence_failures = 0;
  json equivalence_witness;
  json independence_witness;
  for (int t = 0; t < opts.trials; ++t) {
    FixtureGen gen = FixtureGen::stream(opts.seed, static_cast<std::uint64_t>(t));
    const auto loss = gen.loss(2, 6);
    const auto& [rho, psi] = pairs[static_cast<std::size_t>(t) % pairs.size()];
    const auto candidates = contract_grid(ContractFamily::i1(), loss.max_value() + 1.0);
    ParetoProblem prob{loss, rho, psi, ContractFamily::i1(), ExpectedValuePremium{}};

    const auto& f =
        candidates[static_cast<std::size_t>(gen.uniform_int(0, static_cast<int>(candidates.size()) - 1))];
    if (!check_prop1_equivalence(prob, f, candidates, premiums) &&
        equivalence_failures++ == 0) {
      equivalence_witness = json{{"loss", distribution_to_json(loss)},
                                 {"rho", describe(rho)},
                                 {"psi", describe(psi)}};
    }

    const auto base_set = argmin_set(prob, candidates, false);
    for (const auto& rule : premiums) {
      ParetoProblem variant = prob;
      variant.premium = rule;
      if (argmin_set(variant, candidates, true) != base_set) {
        if (independence_failures++ == 0) {
          independence_witness = json{{"loss", distribution_to_json(loss)},
                                      {"rho", describe(rho)},
                                      {"psi", describe(psi)}};
        }
        break;
      }
    }
  }
  report.checks.push_back(evidence("three-way-equivalence", equivalence_failures, opts.trials,
                                   std::move(equivalence_witness)));
  report.checks.push_back(evidence("premium-independence", independence_failures, opts.trials,
                                   std::move(independence_witness)));
  return report;
}

Report suite_prop2(const SuiteOptions& opts) {
  Report report;
  report.suite = "prop2";
  report.claim = "1-Lipschitz splits are comonotone; deductible-class splits of losses "
                 "at the matching level share a tail event";
  report.seed = opts.seed;
  report.trials = opts.trials;

  int comonotone_failures = 0;
  int tail_failures = 0;
  json comonotone_witness;
  json tail_witness;
  for (int t = 0; t < opts.trials; ++t) {
    FixtureGen gen = FixtureGen::stream(opts.seed, static_cast<std::uint64_t>(t));
    const auto loss = gen.loss();
    const auto f2 = gen.contract(ContractFamily::i2(), loss.max_value() + 1.0);
    if (!is_comonotonic(split_joint(f2, loss)).comonotonic && comonotone_failures++ == 0) {
      comonotone_witness = split_witness(loss, f2, 0.0, 0.0);
    }

    const auto loss_d = gen.loss_at_level(opts.deductible, opts.level);
    const auto f1d =
        gen.contract(ContractFamily::i1d(opts.deductible), loss_d.max_value() + 1.0);
    if (!find_common_p_tail(split_joint(f1d, loss_d), opts.level).exists &&
        tail_failures++ == 0) {
      tail_witness = split_witness(loss_d, f1d, 0.0, 0.0);
    }
  }
  report.checks.push_back(evidence("comonotone-split", comonotone_failures, opts.trials,
                                   std::move(comonotone_witness)));
  report.checks.push_back(
      evidence("common-tail-event", tail_failures, opts.trials, std::move(tail_witness)));
  return report;
}

Report suite_prop3(const SuiteOptions& opts) {
  Report report;
  report.suite = "prop3";
  report.claim = "when the insured is uniformly more risk averse, every efficient "
                 "contract is also efficient under the insurer's measure alone";
  report.seed = opts.seed;
  report.trials = opts.trials;

  int inclusion_failures = 0;
  json inclusion_witness;
  for (int t = 0; t < opts.trials; ++t) {
    FixtureGen gen = FixtureGen::stream(opts.seed, static_cast<std::uint64_t>(t));
    const auto loss = gen.loss(2, 6);
    const auto candidates = contract_grid(ContractFamily::i1(), loss.max_value() + 1.0);
    if (!check_prop3_inclusion(loss, ExpectedShortfall{0.9}, ExpectedShortfall{0.5},
                               candidates) &&
        inclusion_failures++ == 0) {
      inclusion_witness = json{{"loss", distribution_to_json(loss)}};
    }
  }
  report.checks.push_back(evidence("argmin-inclusion", inclusion_failures, opts.trials,
                                   std::move(inclusion_witness)));

  // the precedence guard must refuse a non-dominating pair
  bool refused = false;
  try {
    FixtureGen gen = FixtureGen::stream(opts.seed, 0);
    const auto loss = gen.loss(2, 6);
    const auto candidates = contract_grid(ContractFamily::i1(), loss.max_value() + 1.0);
    check_prop3_inclusion(loss, Mean{}, ExpectedShortfall{0.5}, candidates);
  } catch (const Error& e) {
    refused = e.kind() == ErrorKind::PrecedenceNotVerified;
  }
  report.checks.push_back({"precedence-guard", refused, "exact",
                           "a non-dominating pair is refused, not reported false", json{}});
  return report;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"thm1-if",  "thm1-gap", "thm2-forward", "thm2-probe", "lemma5",
          "identity", "prop1",    "prop2",        "prop3"};
}

Report run_suite(const std::string& name, const SuiteOptions& opts) {
  if (name == "thm1-if") return suite_thm1_if(opts);
  if (name == "thm1-gap") return suite_thm1_gap();
  if (name == "thm2-forward") {
    auto r = check_deductible_additivity(opts.level, opts.deductible, opts.trials, opts.seed);
    r.suite = "thm2-forward";
    return r;
  }
  if (name == "thm2-probe") return suite_thm2_probe(opts);
  if (name == "lemma5") {
    const std::vector<double> defaults{-2.0, -0.5, 0.0, 0.5, 1.0, 1.2, 1.5, 2.0};
    auto r = check_mixture_axiom_ranges(opts.level, opts.weights.empty() ? defaults : opts.weights,
                                        opts.trials, opts.seed);
    r.suite = "lemma5";
    return r;
  }
  if (name == "identity") {
    auto r = check_tail_mean_identity(opts.trials, opts.seed);
    r.suite = "identity";
    return r;
  }
  if (name == "prop1") return suite_prop1(opts);
  if (name == "prop2") return suite_prop2(opts);
  if (name == "prop3") return suite_prop3(opts);
  throw Error(ErrorKind::MalformedInput, "unknown suite: '" + name + "'");
}

}  // namespace riskopt
