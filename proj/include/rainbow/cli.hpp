#ifndef RAINBOW_CLI_HPP
#define RAINBOW_CLI_HPP

#include <string>
#include <vector>

// Command-line surface. Subcommands: gen, check, solve, oracle,
// verify-theorem. Exit codes: 0 found/pass, 1 none/fail, 2 usage, parse or
// role errors, 3 budget exhausted or move stall.

namespace rainbow::cli {

struct RunResult {
    int exit_code{0};
    std::string out;
    std::string err;
};

/// Runs one command line (without the program name). All file I/O happens
/// here; stdout/stderr text is returned for inspection.
RunResult run(const std::vector<std::string>& args);

}  // namespace rainbow::cli

#endif
