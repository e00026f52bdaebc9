#pragma once

#include "subfde/assembly.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace subfde {

/// Problem file error with 1-based line number (0 when not line specific).
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

struct TermSpec {
    double alpha = 0.0;
    std::string coefficient;
};

struct CalibrationSpec {
    double epsilon = 0.0;
    double t_ref = 0.0;
    double u_ref = 0.0;
};

/// Flat key-value problem description:
///
///     # comment
///     term = 1.5, "1"           (repeatable: order, coefficient q(t))
///     p = "1"
///     f = "x*exp(-x)"
///     ics = 0, 0                 (y(0), y'(0), ...)
///     h = 2^-9
///     t_end = 1
///     calibrate = 1e-3, 1, 0.1268   (optional: epsilon, t*, u*)
///     exact = "x^2"              (optional reference solution)
///
/// Numeric fields accept constant expressions. p and f default to "0".
struct ProblemConfig {
    std::vector<TermSpec> terms;
    std::string p = "0";
    std::string f = "0";
    std::vector<double> ics;
    double h = 0.0;
    double t_end = 0.0;
    std::optional<CalibrationSpec> calibrate;
    std::optional<std::string> exact;

    /// Throws ConfigError when the description is not a valid problem.
    FdeProblem problem() const;
};

ProblemConfig parse_config(std::string_view text);
ProblemConfig load_config(const std::filesystem::path& path);

}  // namespace subfde
