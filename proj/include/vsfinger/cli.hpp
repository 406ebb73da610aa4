#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vsf::cli {

enum ExitCode : int { kOk = 0, kAnalyticalFailure = 1, kInputError = 2 };

// Entry point of the `vsfinger` tool; args excludes the program name.
// Subcommands: lock | grasp | sweep | step | simulate.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vsf::cli
