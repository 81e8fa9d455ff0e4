#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperderiv::cli {

/// Exit codes: every check passed, a mathematical check failed, or the
/// command line or an input document was unusable.
enum ExitCode : int { ok = 0, check_failed = 1, usage_error = 2 };

/// Runs one command. Never throws; every failure maps to an exit code with
/// a diagnostic on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperderiv::cli
