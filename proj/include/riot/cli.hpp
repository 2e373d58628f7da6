#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace riot::cli {

/// Exit codes shared by every subcommand.
enum Exit : int { Success = 0, InternalFailure = 1, InputError = 2 };

/// Runs the command line `args` (without the program name). Normal output
/// goes to `out`, diagnostics to `err`. Subcommands: gen, schedule,
/// simulate, compare.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace riot::cli
