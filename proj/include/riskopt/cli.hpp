#ifndef RISKOPT_CLI_HPP
#define RISKOPT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace riskopt {

/// Runs the command-line surface on an argument list (without the program
/// name) and returns the process exit code: 0 success or suite pass, 1
/// verification failure or empty menu, 2 input syntax error, 3 data invariant
/// violation, 4 solver refusal. RISKOPT_SEED provides the default seed.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace riskopt

#endif  // RISKOPT_CLI_HPP
