#ifndef RBDA_CLI_HPP
#define RBDA_CLI_HPP

#include <iosfwd>

namespace rbda {

/// Entry point of the `rbda` tool. Exit status: 0 success, 1 invalid input
/// or failed analysis (JSON error record on `err`), 2 bad arguments.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rbda

#endif  // RBDA_CLI_HPP
