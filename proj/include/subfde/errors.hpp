#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace subfde {

/// Malformed expression or config text. `offset()` is a byte offset into the
/// parsed string.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Evaluation outside the domain of a function (ln of a non-positive value,
/// division by zero, gamma at a pole, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Failure of a numerical procedure: singular pivot, series that does not
/// converge, calibration against a vanishing value.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what, long row = -1)
        : std::runtime_error(row >= 0 ? what + " (row " + std::to_string(row) + ")" : what), row_(row) {}

    /// Grid row where the failure happened, or -1.
    long row() const noexcept { return row_; }

private:
    long row_;
};

}  // namespace subfde
