#pragma once

#include <iosfwd>

#include "rnmcli/config.hpp"

namespace rnmcli {

enum ExitCode : int { kPass = 0, kToleranceFailure = 1, kUsageError = 2 };

/// Runs c.command. Artifacts go to c.out when set, else to `out`; diagnostics
/// go to `err`. Library errors are reported and mapped to kUsageError.
int run_command(const RunConfig& c, std::ostream& out, std::ostream& err);

}  // namespace rnmcli
