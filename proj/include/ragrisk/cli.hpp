#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ragrisk::cli {

/// Process exit codes.
enum ExitCode : int {
    kSuccess = 0,
    kFindings = 1,     // validation findings present
    kParseError = 2,   // parse or schema error in a catalog
    kUsageError = 3,   // bad flags, unknown ids
    kInternalError = 4,
};

/// Environment variable naming the default workspace directory.
inline constexpr const char* kWorkspaceEnv = "RAGRISK_WORKSPACE";

/// Runs the `ragrisk` command line. `args` excludes the program name. Data goes
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ragrisk::cli
