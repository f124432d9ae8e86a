#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ampm {

enum class ErrorKind {
    InvalidParameter,
    Parse,
    SingularEvaluation,
    DegenerateCarrier,
};

/// Base for every error thrown by the library. The kind drives CLI exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// Short machine-readable token, used in CSV status cells.
    const char* token() const noexcept;

private:
    ErrorKind kind_;
};

class InvalidParameter : public Error {
public:
    explicit InvalidParameter(const std::string& what) : Error(ErrorKind::InvalidParameter, what) {}
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& reason);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Denominator vanished at the evaluation point (pole on or near the jw axis).
class SingularEvaluation : public Error {
public:
    SingularEvaluation(double frequency_hz, double denominator_magnitude);

    double frequency_hz() const noexcept { return frequency_hz_; }

private:
    double frequency_hz_;
};

/// Carrier amplitude too small to normalize sidebands against.
class DegenerateCarrier : public Error {
public:
    explicit DegenerateCarrier(double carrier_magnitude);
};

} // namespace ampm
