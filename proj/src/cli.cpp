#include "riskopt/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "riskopt/fixtures.hpp"
#include "riskopt/io.hpp"
#include "riskopt/plot.hpp"
#include "riskopt/verify.hpp"

namespace riskopt {

namespace {

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::MalformedInput:
      return 2;
    case ErrorKind::NonConvexMeasure:
    case ErrorKind::UnsupportedFamily:
      return 4;
    case ErrorKind::EmptyMenu:
      return 1;
    default:
      return 3;
  }
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("RISKOPT_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return 7;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::MalformedInput, "cannot write " + path);
  }
  out << content;
}

struct EvalArgs {
  std::string measure;
  std::string dist;
  bool as_json = false;
};

struct SolveArgs {
  std::string problem;
  bool force_oracle = false;
  std::string plot_path;
};

struct VerifyArgs {
  std::string suite;
  int trials = 200;
  std::uint64_t seed = 7;
  double level = 0.5;
  double deductible = 1.0;
  std::vector<double> weights;
  std::string probe;
  std::string expect;
};

struct PlotArgs {
  std::vector<std::string> contracts;
  double x_max = 1.0;
  double deductible = -1.0;
  std::string out_path = "plot.svg";
};

struct MenuArgs {
  std::string psi;
  std::string family;
  std::vector<std::string> dists;
  double x_max = 0.0;
  double tol = 1e-9;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Risk measures and efficient insurance contracts on finite discrete losses"};
  app.name("riskopt");

  EvalArgs eval_args;
  auto* cmd_eval = app.add_subcommand("eval", "Evaluate a risk measure on a distribution");
  cmd_eval->add_option("measure", eval_args.measure, "mean | var@P | es@P | les@P | mix@P:W | dist@FILE")
      ->required();
  cmd_eval->add_option("distribution", eval_args.dist, "CSV or JSON distribution file")
      ->required();
  cmd_eval->add_flag("--json", eval_args.as_json, "emit a JSON record");

  SolveArgs solve_args;
  auto* cmd_solve = app.add_subcommand("solve", "Minimize the two-party objective over a family");
  cmd_solve->add_option("problem", solve_args.problem, "problem JSON file")->required();
  cmd_solve->add_flag("--oracle", solve_args.force_oracle,
                      "also run the enumeration oracle (supports <= 5 atoms)");
  cmd_solve->add_option("--plot", solve_args.plot_path, "write the minimizer contract as SVG");

  VerifyArgs verify_args;
  verify_args.seed = default_seed();
  auto* cmd_verify = app.add_subcommand("verify", "Run a named verification suite");
  cmd_verify->add_option("suite", verify_args.suite,
                         "thm1-if | thm1-gap | thm2-forward | thm2-probe | lemma5 | identity "
                         "| prop1 | prop2 | prop3")
      ->required();
  cmd_verify->add_option("--trials", verify_args.trials, "randomized trials per check");
  cmd_verify->add_option("--seed", verify_args.seed, "deterministic seed");
  cmd_verify->add_option("--level", verify_args.level, "tail level p");
  cmd_verify->add_option("--deductible", verify_args.deductible, "deductible d");
  cmd_verify->add_option("--weights", verify_args.weights, "mixture weight grid (lemma5)");
  cmd_verify->add_option("--probe", verify_args.probe, "measure to probe (thm2-probe)");
  cmd_verify->add_option("--expect", verify_args.expect,
                         "witness|none: expected probe outcome (thm2-probe)");

  PlotArgs plot_args;
  auto* cmd_plot = app.add_subcommand("plot", "Draw contracts as SVG");
  cmd_plot->add_option("contracts", plot_args.contracts,
                       "contract specs: zero | id | ded:D*A | dedlim:D^U | file.json")
      ->required();
  cmd_plot->add_option("--xmax", plot_args.x_max, "right end of the loss axis")->required();
  cmd_plot->add_option("--d", plot_args.deductible, "draw the (x-d)+ reference dashed");
  cmd_plot->add_option("-o,--out", plot_args.out_path, "output SVG path");

  MenuArgs menu_args;
  auto* cmd_menu = app.add_subcommand("menu", "Contracts optimal for every given loss");
  cmd_menu->add_option("--psi", menu_args.psi, "insurer measure")->required();
  cmd_menu->add_option("--family", menu_args.family, "i0 | i1 | i2 | i1d:D")->required();
  cmd_menu->add_option("--dist", menu_args.dists, "distribution files")->required();
  cmd_menu->add_option("--xmax", menu_args.x_max, "grid domain (defaults to max loss + 1)");
  cmd_menu->add_option("--tol", menu_args.tol, "argmin tolerance");

  app.require_subcommand(1);

  std::vector<const char*> argv;
  argv.push_back("riskopt");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "riskopt: " << e.what() << "\n";
    return 2;
  }

  try {
    if (cmd_eval->parsed()) {
      const auto measure = parse_measure(eval_args.measure);
      const auto dist = load_distribution(eval_args.dist);
      const double value = evaluate(measure, dist);
      if (eval_args.as_json) {
        nlohmann::json j{{"measure", eval_args.measure},
                         {"value", value},
                         {"distribution_digest", distribution_digest(dist)},
                         {"atoms", distribution_to_json(dist)["atoms"]}};
        out << j.dump(2) << "\n";
      } else {
        out << format_compact(value) << "\n";
      }
      return 0;
    }

    if (cmd_solve->parsed()) {
      auto file = load_problem(solve_args.problem);
      const auto result = solve(file.problem, file.settings);
      nlohmann::json j = solve_result_to_json(result, file.problem);
      if (solve_args.force_oracle && !result.oracle_value) {
        const auto oracle = brute_force_oracle(file.problem, file.settings.grid_steps);
        j["oracle_value"] = oracle.optimal_value;
      }
      out << j.dump(2) << "\n";
      if (!solve_args.plot_path.empty()) {
        PlotSpec spec;
        spec.contracts.push_back(to_contract(file.problem, result.ceded_values));
        if (file.problem.family.kind == ContractFamily::Kind::I1d) {
          spec.deductible = file.problem.family.deductible;
        }
        spec.x_max = file.problem.loss.max_value();
        write_file(solve_args.plot_path, render_svg(spec));
      }
      return 0;
    }

    if (cmd_verify->parsed()) {
      SuiteOptions opts;
      opts.trials = verify_args.trials;
      opts.seed = verify_args.seed;
      opts.level = verify_args.level;
      opts.deductible = verify_args.deductible;
      opts.weights = verify_args.weights;
      if (!verify_args.probe.empty()) opts.probe_measure = parse_measure(verify_args.probe);
      if (!verify_args.expect.empty()) {
        if (verify_args.expect != "witness" && verify_args.expect != "none") {
          throw Error(ErrorKind::MalformedInput, "--expect takes 'witness' or 'none'");
        }
        opts.expect_witness = verify_args.expect == "witness";
      }
      const auto report = run_suite(verify_args.suite, opts);
      out << report.to_json().dump(2) << "\n";
      return report.pass() ? 0 : 1;
    }

    if (cmd_plot->parsed()) {
      PlotSpec spec;
      for (const auto& s : plot_args.contracts) spec.contracts.push_back(parse_contract(s));
      spec.x_max = plot_args.x_max;
      if (plot_args.deductible >= 0.0) spec.deductible = plot_args.deductible;
      write_file(plot_args.out_path, render_svg(spec));
      return 0;
    }

    if (cmd_menu->parsed()) {
      const auto psi = parse_measure(menu_args.psi);
      const auto family = parse_family(menu_args.family);
      std::vector<DiscreteDistribution> losses;
      double max_value = 0.0;
      for (const auto& path : menu_args.dists) {
        losses.push_back(load_distribution(path));
        max_value = std::max(max_value, losses.back().max_value());
      }
      const double x_max = menu_args.x_max > 0.0 ? menu_args.x_max : max_value + 1.0;
      const auto grid = contract_grid(family, x_max);
      const auto kept = menu(losses, psi, grid, menu_args.tol);
      nlohmann::json contracts = nlohmann::json::array();
      for (std::size_t i : kept) contracts.push_back(contract_to_json(grid[i]));
      nlohmann::json j{{"psi", menu_args.psi},
                       {"family", menu_args.family},
                       {"grid_size", grid.size()},
                       {"count", kept.size()},
                       {"contracts", std::move(contracts)}};
      out << j.dump(2) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    err << "riskopt: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return 0;
}

}  // namespace riskopt
