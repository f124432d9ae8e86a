#include "ampm/format.hpp"

#include <cmath>
#include <cstdio>

namespace ampm {

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x < 0 ? "-inf" : "inf";
    }
    if (x == 0.0) {
        return "0";
    }
    char buf[48];
    const double ax = std::abs(x);
    if (ax >= 1e-3 && ax < 1e6) {
        const int int_digits = static_cast<int>(std::floor(std::log10(ax))) + 1;
        const int decimals = std::max(0, 9 - int_digits);
        std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
        std::string s(buf);
        if (s.find('.') != std::string::npos) {
            while (s.back() == '0') {
                s.pop_back();
            }
            if (s.back() == '.') {
                s.pop_back();
            }
        }
        return s;
    }
    std::snprintf(buf, sizeof buf, "%.8e", x);
    return buf;
}

} // namespace ampm
