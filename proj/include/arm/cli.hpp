#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace arm::cli {

enum class ExitCode : int {
    Clean = 0,      // property holds / nothing emergent
    Violated = 1,   // property violated / emergence found
    InputError = 2, // usage, file or format problem
    Resource = 3,   // state budget exceeded
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace arm::cli
