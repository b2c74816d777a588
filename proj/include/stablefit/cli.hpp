#ifndef STABLEFIT_CLI_HPP_
#define STABLEFIT_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace stablefit {

// Runs the command-line front end on an argv-style argument list (program
// name excluded). Returns the process exit code; failures print a single
// "error:<category>: ..." line on err.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace stablefit

#endif  // STABLEFIT_CLI_HPP_
