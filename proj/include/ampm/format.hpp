#pragma once

#include <string>

namespace ampm {

/// 9 significant digits; scientific notation outside [1e-3, 1e6).
/// Zero prints as "0", -infinity as "-inf".
std::string format_number(double x);

} // namespace ampm
