#include "ampm/error.hpp"

#include <cstdio>

namespace ampm {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

const char* Error::token() const noexcept {
    switch (kind_) {
    case ErrorKind::InvalidParameter: return "invalid_parameter";
    case ErrorKind::Parse: return "parse_error";
    case ErrorKind::SingularEvaluation: return "singular";
    case ErrorKind::DegenerateCarrier: return "degenerate_carrier";
    }
    return "error";
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& reason)
    : Error(ErrorKind::Parse,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + reason),
      line_(line), column_(column) {}

SingularEvaluation::SingularEvaluation(double frequency_hz, double denominator_magnitude)
    : Error(ErrorKind::SingularEvaluation,
            "singular evaluation at f = " + format_double(frequency_hz) + " Hz (|den| = " +
                format_double(denominator_magnitude) + ")"),
      frequency_hz_(frequency_hz) {}

DegenerateCarrier::DegenerateCarrier(double carrier_magnitude)
    : Error(ErrorKind::DegenerateCarrier,
            "degenerate carrier: |carrier| = " + format_double(carrier_magnitude)) {}

} // namespace ampm
