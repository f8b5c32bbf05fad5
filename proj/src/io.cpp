#include "riskopt/io.hpp"

#include <charconv>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace riskopt {

namespace {

using nlohmann::json;

double parse_number(const std::string& text, const std::string& what) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(value)) {
    throw Error(ErrorKind::MalformedInput, "bad " + what + ": '" + text + "'");
  }
  return value;
}

std::string trimmed(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::MalformedInput, "cannot open " + path);
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedInput, path + ": " + e.what());
  }
  return j;
}

}  // namespace

std::string format_compact(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", value);
  return buf;
}

json distribution_to_json(const DiscreteDistribution& dist) {
  json atoms = json::array();
  for (const Atom& a : dist.atoms()) atoms.push_back({a.value, a.prob});
  return json{{"atoms", std::move(atoms)}};
}

DiscreteDistribution distribution_from_json(const json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array()) {
    throw Error(ErrorKind::MalformedInput, "distribution JSON needs an \"atoms\" array");
  }
  std::vector<Atom> atoms;
  for (const auto& entry : j["atoms"]) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
        !entry[1].is_number()) {
      throw Error(ErrorKind::MalformedInput, "each atom must be a [value, prob] pair");
    }
    atoms.push_back({entry[0].get<double>(), entry[1].get<double>()});
  }
  return DiscreteDistribution::canonical(std::move(atoms));
}

DiscreteDistribution distribution_from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorKind::MalformedInput, "empty distribution file");
  }
  if (trimmed(line) != "value,probability") {
    throw Error(ErrorKind::MalformedInput, "expected header 'value,probability'");
  }
  std::vector<Atom> atoms;
  while (std::getline(in, line)) {
    const std::string row = trimmed(line);
    if (row.empty()) continue;
    const auto comma = row.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorKind::MalformedInput, "row without comma: '" + row + "'");
    }
    atoms.push_back({parse_number(trimmed(row.substr(0, comma)), "value"),
                     parse_number(trimmed(row.substr(comma + 1)), "probability")});
  }
  return DiscreteDistribution::canonical(std::move(atoms));
}

DiscreteDistribution load_distribution(const std::string& path) {
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    return distribution_from_json(read_json_file(path));
  }
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::MalformedInput, "cannot open " + path);
  }
  char first = '\0';
  in.get(first);
  in.unget();
  if (first == '{') {
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw Error(ErrorKind::MalformedInput, path + ": " + e.what());
    }
    return distribution_from_json(j);
  }
  return distribution_from_csv(in);
}

std::string distribution_digest(const DiscreteDistribution& dist) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto feed = [&hash](double v) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char b : bytes) {
      hash ^= b;
      hash *= 0x100000001b3ULL;
    }
  };
  for (const Atom& a : dist.atoms()) {
    feed(a.value);
    feed(a.prob);
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

json distortion_to_json(const DistortionFunction& h) {
  json knots = json::array();
  for (const auto& k : h.knots()) knots.push_back({k.t, k.h});
  return json{{"knots", std::move(knots)}};
}

DistortionFunction distortion_from_json(const json& j) {
  if (!j.is_object() || !j.contains("knots") || !j["knots"].is_array()) {
    throw Error(ErrorKind::MalformedInput, "distortion JSON needs a \"knots\" array");
  }
  std::vector<DistortionFunction::Knot> knots;
  for (const auto& entry : j["knots"]) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
        !entry[1].is_number()) {
      throw Error(ErrorKind::MalformedInput, "each knot must be a [t, h] pair");
    }
    knots.push_back({entry[0].get<double>(), entry[1].get<double>()});
  }
  return DistortionFunction::from_knots(std::move(knots));
}

RiskMeasure parse_measure(const std::string& spec) {
  if (spec == "mean") return Mean{};
  const auto at = spec.find('@');
  if (at == std::string::npos || at == 0 || at + 1 >= spec.size()) {
    throw Error(ErrorKind::MalformedInput, "bad measure spec: '" + spec + "'");
  }
  const std::string head = spec.substr(0, at);
  const std::string arg = spec.substr(at + 1);
  if (head == "var") return ValueAtRisk{parse_number(arg, "level")};
  if (head == "es") return ExpectedShortfall{parse_number(arg, "level")};
  if (head == "les") return LeftExpectedShortfall{parse_number(arg, "level")};
  if (head == "mix") {
    const auto colon = arg.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorKind::MalformedInput, "mixture spec needs mix@LEVEL:WEIGHT");
    }
    return EsMeanMixture{parse_number(arg.substr(0, colon), "level"),
                         parse_number(arg.substr(colon + 1), "weight")};
  }
  if (head == "dist") return DistortionMeasure{distortion_from_json(read_json_file(arg))};
  throw Error(ErrorKind::MalformedInput, "unknown measure kind: '" + head + "'");
}

json contract_to_json(const CededLossFunction& f) {
  json knots = json::array();
  for (const auto& k : f.knots()) knots.push_back({k.x, k.y});
  return json{{"knots", std::move(knots)}, {"tail_slope", f.tail_slope()}};
}

CededLossFunction contract_from_json(const json& j) {
  if (!j.is_object() || !j.contains("knots") || !j["knots"].is_array()) {
    throw Error(ErrorKind::MalformedInput, "contract JSON needs a \"knots\" array");
  }
  std::vector<CededLossFunction::Knot> knots;
  for (const auto& entry : j["knots"]) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
        !entry[1].is_number()) {
      throw Error(ErrorKind::MalformedInput, "each knot must be an [x, y] pair");
    }
    knots.push_back({entry[0].get<double>(), entry[1].get<double>()});
  }
  double tail = 0.0;
  if (j.contains("tail_slope")) {
    if (!j["tail_slope"].is_number()) {
      throw Error(ErrorKind::MalformedInput, "tail_slope must be a number");
    }
    tail = j["tail_slope"].get<double>();
  } else if (knots.size() >= 2) {
    const auto& a = knots[knots.size() - 2];
    const auto& b = knots.back();
    tail = (b.y - a.y) / (b.x - a.x);
  }
  return CededLossFunction::from_knots(std::move(knots), tail);
}

CededLossFunction parse_contract(const std::string& spec) {
  if (spec == "zero") return zero_contract();
  if (spec == "id") return identity_contract();
  if (spec.rfind("ded:", 0) == 0) {
    const std::string arg = spec.substr(4);
    const auto star = arg.find('*');
    if (star == std::string::npos) {
      throw Error(ErrorKind::MalformedInput, "coinsurance spec needs ded:D*SHARE");
    }
    return deductible_coinsurance(parse_number(arg.substr(0, star), "deductible"),
                                  parse_number(arg.substr(star + 1), "share"));
  }
  if (spec.rfind("dedlim:", 0) == 0) {
    const std::string arg = spec.substr(7);
    const auto caret = arg.find('^');
    if (caret == std::string::npos) {
      throw Error(ErrorKind::MalformedInput, "limit spec needs dedlim:D^LIMIT");
    }
    return deductible_limit(parse_number(arg.substr(0, caret), "deductible"),
                            parse_number(arg.substr(caret + 1), "limit"));
  }
  if (std::filesystem::exists(spec)) return contract_from_json(read_json_file(spec));
  throw Error(ErrorKind::MalformedInput, "unknown contract spec: '" + spec + "'");
}

ContractFamily parse_family(const std::string& spec) {
  if (spec == "i0") return ContractFamily::i0();
  if (spec == "i1") return ContractFamily::i1();
  if (spec == "i2") return ContractFamily::i2();
  if (spec.rfind("i1d:", 0) == 0) {
    return ContractFamily::i1d(parse_number(spec.substr(4), "deductible"));
  }
  throw Error(ErrorKind::MalformedInput, "unknown family: '" + spec + "'");
}

std::string family_spec(const ContractFamily& family) {
  switch (family.kind) {
    case ContractFamily::Kind::I0: return "i0";
    case ContractFamily::Kind::I1: return "i1";
    case ContractFamily::Kind::I2: return "i2";
    case ContractFamily::Kind::I1d: return "i1d:" + format_compact(family.deductible);
  }
  return "i0";
}

ProblemFile problem_from_json(const json& j, const std::string& base_dir) {
  if (!j.is_object()) {
    throw Error(ErrorKind::MalformedInput, "problem file must be a JSON object");
  }
  for (const char* key : {"distribution", "rho", "psi", "family"}) {
    if (!j.contains(key)) {
      throw Error(ErrorKind::MalformedInput, std::string("problem file misses \"") + key + "\"");
    }
  }

  ProblemFile out{
      ParetoProblem{point_mass(0.0), Mean{}, Mean{}, ContractFamily::i0(),
                    ExpectedValuePremium{}},
      SolveSettings{}};

  const auto& d = j["distribution"];
  if (d.is_string()) {
    const std::filesystem::path p(d.get<std::string>());
    out.problem.loss =
        load_distribution(p.is_absolute() || base_dir.empty()
                              ? p.string()
                              : (std::filesystem::path(base_dir) / p).string());
  } else {
    out.problem.loss = distribution_from_json(d);
  }
  if (!out.problem.loss.nonnegative()) {
    throw Error(ErrorKind::NotNonnegativeLoss, "problem loss must be nonnegative");
  }

  out.problem.insured = parse_measure(j["rho"].get<std::string>());
  out.problem.insurer = parse_measure(j["psi"].get<std::string>());
  out.problem.family = parse_family(j["family"].get<std::string>());

  if (j.contains("premium")) {
    const auto& p = j["premium"];
    const std::string kind = p.value("kind", "expected_value");
    if (kind == "expected_value") {
      out.problem.premium = ExpectedValuePremium{p.value("loading", 0.0)};
    } else if (kind == "psi") {
      out.problem.premium = InsurerPremium{};
    } else {
      throw Error(ErrorKind::MalformedInput, "unknown premium kind: '" + kind + "'");
    }
  }
  if (j.contains("solver")) {
    const auto& s = j["solver"];
    out.settings.iterations = s.value("iterations", out.settings.iterations);
    out.settings.grid_steps = s.value("grid_steps", out.settings.grid_steps);
    out.settings.polish_passes = s.value("polish_passes", out.settings.polish_passes);
    out.settings.step_scale = s.value("step_scale", out.settings.step_scale);
    out.settings.grid_certificate = s.value("oracle", out.settings.grid_certificate);
  }
  return out;
}

ProblemFile load_problem(const std::string& path) {
  return problem_from_json(read_json_file(path),
                           std::filesystem::path(path).parent_path().string());
}

json solve_result_to_json(const SolveResult& result, const ParetoProblem& prob) {
  json support = json::array();
  for (const Atom& a : prob.loss.atoms()) support.push_back(a.value);
  json j{{"optimal_value", result.optimal_value},
         {"minimizer", result.ceded_values},
         {"support", std::move(support)},
         {"method", result.method == SolveMethod::GridOracle ? "grid-oracle" : "subgradient"},
         {"certified_gap", result.certified_gap},
         {"family", family_spec(prob.family)},
         {"rho", describe(prob.insured)},
         {"psi", describe(prob.insurer)},
         {"contract", contract_to_json(to_contract(prob, result.ceded_values))}};
  if (result.oracle_value) j["oracle_value"] = *result.oracle_value;
  return j;
}

json axiom_report_to_json(const AxiomReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    json witness = json::array();
    for (const auto& a : v.witness) witness.push_back({a.x, a.y, a.prob});
    violations.push_back({{"axiom", v.axiom},
                          {"description", v.description},
                          {"lhs", v.lhs},
                          {"rhs", v.rhs},
                          {"witness", std::move(witness)}});
  }
  return json{{"measure", report.measure},
              {"seed", report.seed},
              {"trials", report.trials},
              {"violations", std::move(violations)}};
}

}  // namespace riskopt
