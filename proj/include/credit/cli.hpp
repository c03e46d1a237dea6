#ifndef CREDIT_CLI_HPP
#define CREDIT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace credit {

/**
 * Runs the command line with `args` (program name excluded).
 *
 * Exit codes: 0 success, 1 validation or I/O error (message on `err`),
 * 2 infeasible request (structured JSON reason on `out`).
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace credit

#endif  // CREDIT_CLI_HPP
