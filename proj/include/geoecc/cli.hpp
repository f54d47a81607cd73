#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace geoecc {

enum ExitCode { kExitOk = 0, kExitError = 1, kExitConfig = 2, kExitDisconnected = 3, kExitGlobalFailure = 4, kExitDeadEnd = 5 };

/// Entry point of the `geoecc` tool; `args` excludes the program name.
/// Subcommands: generate, measure, route, protocol, campaign.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace geoecc
