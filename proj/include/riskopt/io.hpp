#ifndef RISKOPT_IO_HPP
#define RISKOPT_IO_HPP

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "riskopt/pareto.hpp"

namespace riskopt {

// Distributions travel as CSV with a `value,probability` header or as JSON
// {"atoms": [[value, prob], ...]}; canonicalization is applied on load.

nlohmann::json distribution_to_json(const DiscreteDistribution& dist);
DiscreteDistribution distribution_from_json(const nlohmann::json& j);
DiscreteDistribution distribution_from_csv(std::istream& in);
DiscreteDistribution load_distribution(const std::string& path);

/// Stable FNV-1a hash of the canonical atoms, as a hex string.
std::string distribution_digest(const DiscreteDistribution& dist);

nlohmann::json distortion_to_json(const DistortionFunction& h);
DistortionFunction distortion_from_json(const nlohmann::json& j);

/// Measure syntax: mean | var@P | es@P | les@P | mix@P:W | dist@FILE where
/// FILE is a JSON distortion {"knots": [[t,h],...]}.
RiskMeasure parse_measure(const std::string& spec);

/// Contract JSON {"knots": [[x,y],...]} with an optional "tail_slope" (the
/// last segment slope when omitted).
nlohmann::json contract_to_json(const CededLossFunction& f);
CededLossFunction contract_from_json(const nlohmann::json& j);

/// Shorthand `zero`, `id`, `ded:D*A`, `dedlim:D^U`, or a path to a contract
/// JSON file.
CededLossFunction parse_contract(const std::string& spec);

/// Family syntax: i0 | i1 | i2 | i1d:D.
ContractFamily parse_family(const std::string& spec);
std::string family_spec(const ContractFamily& family);

struct ProblemFile {
  ParetoProblem problem;
  SolveSettings settings;
};

/// Problem JSON bundling the loss (inline atoms or a file path relative to
/// the problem file), measure strings for both parties, the family tag, the
/// premium rule, and optional solver settings.
ProblemFile problem_from_json(const nlohmann::json& j, const std::string& base_dir);
ProblemFile load_problem(const std::string& path);

nlohmann::json solve_result_to_json(const SolveResult& result, const ParetoProblem& prob);
nlohmann::json axiom_report_to_json(const AxiomReport& report);

/// Shortest-ish decimal rendering (%.10g), shared by the CLI surfaces.
std::string format_compact(double value);

}  // namespace riskopt

#endif  // RISKOPT_IO_HPP
