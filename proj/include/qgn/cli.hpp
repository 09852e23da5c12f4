#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qgn::cli {

/// Process exit codes.
enum ExitCode : int
{
    kConverged = 0,
    kUsageError = 1,
    kMaxIterations = 2,
    kSolverError = 3,
};

/// Runs the `qgn` command line; `args` excludes the program name.
/// Subcommands: solve, sweep, compare-nm.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qgn::cli
