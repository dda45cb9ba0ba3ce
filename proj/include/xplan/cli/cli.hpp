#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace xplan::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kInput = 2, // syntax, validation, configuration, missing --seed
    kCap = 3,   // action, state-stage or node cap exceeded
    kIo = 4,    // unreadable input or unwritable output
};

/// Runs `xplan <args...>` (args exclude the program name). Summaries go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace xplan::cli
