#pragma once

#include <ostream>

namespace uavcharge::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kConfigInvalid = 2, kGuard = 3 };

/// Full command line of the `uavcharge` tool. Summaries go to `out`,
/// diagnostics to `err`; CSV files are written under --out, falling back to
/// $UAVCHARGE_OUT and then the working directory.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace uavcharge::cli
