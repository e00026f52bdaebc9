#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace subfde {

/// Exit statuses of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

/// Runs one subcommand. `args` excludes the program name. CSV goes to --out
/// when given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "%.12g" with negative zero printed as 0.
std::string format_number(double v);

}  // namespace subfde
