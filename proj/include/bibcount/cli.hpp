#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bibcount::cli {

enum ExitCode : int {
    kSuccess = 0,
    kConfigError = 2,
    kCorpusError = 3,
    kComputationError = 4,
};

/// Runs one invocation. `args` excludes the program name. Reports go to
/// `out` unless --out names a file; errors are written to `err` as a single
/// JSON object.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bibcount::cli
