#pragma once

// Shared helpers for the test binaries: random stable filters and
// independent reference arithmetic.

#include "ampm/filter.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace ampm::testing {

/// Relative distance |x - y| / max(|y|, scale).
inline double rel(Complex x, Complex y, double scale) {
    const double denom = std::max(std::abs(y), scale);
    return denom > 0.0 ? std::abs(x - y) / denom : std::abs(x - y);
}

/// Expand prod (s - r_i) into ascending real coefficients.
inline std::vector<double> poly_from_roots(const std::vector<Complex>& roots) {
    std::vector<Complex> c{1.0};
    for (const Complex& r : roots) {
        std::vector<Complex> next(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i] -= r * c[i];
            next[i + 1] += c[i];
        }
        c = std::move(next);
    }
    std::vector<double> out;
    for (const Complex& v : c) {
        out.push_back(v.real());
    }
    return out;
}

/// Random stable filter with poles/zeros scattered around `scale_rad`
/// (left half-plane poles, real or conjugate pairs). `keep_out` rejects any
/// pole closer than keep_out_radius to the listed points on the jw axis.
struct RandomFilterOptions {
    double scale_rad = 1.0;
    std::vector<double> keep_out_rad;
    double keep_out_radius = 0.0;
};

inline TransferFunction random_stable_filter(std::mt19937_64& rng, const RandomFilterOptions& opt) {
    std::uniform_int_distribution<int> order_dist(1, 4);
    std::uniform_real_distribution<double> log_mag(-1.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const auto far_enough = [&opt](Complex pole) {
        for (double w : opt.keep_out_rad) {
            if (std::abs(pole - Complex(0.0, w)) < opt.keep_out_radius ||
                std::abs(pole - Complex(0.0, -w)) < opt.keep_out_radius) {
                return false;
            }
        }
        return true;
    };

    const auto random_roots = [&](int order, bool stable) {
        std::vector<Complex> roots;
        while (static_cast<int>(roots.size()) < order) {
            const double mag = opt.scale_rad * std::pow(10.0, log_mag(rng));
            if (order - static_cast<int>(roots.size()) >= 2 && unit(rng) < 0.5) {
                // Conjugate pair; damping between 0.05 and 1.
                const double angle = std::numbers::pi / 2.0 * (0.05 + 0.95 * unit(rng));
                Complex r = std::polar(mag, std::numbers::pi - angle);
                if (!stable && unit(rng) < 0.5) {
                    r = -std::conj(r);
                }
                if (stable && !far_enough(r)) {
                    continue;
                }
                roots.push_back(r);
                roots.push_back(std::conj(r));
            } else {
                const double sign = (!stable && unit(rng) < 0.5) ? 1.0 : -1.0;
                const Complex r(sign * mag, 0.0);
                if (stable && !far_enough(r)) {
                    continue;
                }
                roots.push_back(r);
            }
        }
        return roots;
    };

    const int den_order = order_dist(rng);
    std::uniform_int_distribution<int> zero_dist(0, den_order);
    const int num_order = zero_dist(rng);
    std::vector<double> den = poly_from_roots(random_roots(den_order, true));
    std::vector<double> num = poly_from_roots(random_roots(num_order, false));
    const double gain = std::pow(10.0, log_mag(rng));
    // Scale so that |H| is O(gain) near scale_rad.
    const double norm = den.front() / (num.front() != 0.0 ? num.front() : 1.0);
    for (double& c : num) {
        c *= gain * norm;
    }
    return TransferFunction(std::move(num), std::move(den));
}

/// Direct complex arithmetic for the stable one-pole w0/(jw + w0).
inline Complex one_pole_reference(double f0_hz, double f_hz) {
    const double w0 = 2.0 * std::numbers::pi * f0_hz;
    const double w = 2.0 * std::numbers::pi * f_hz;
    return Complex(w0, 0.0) / Complex(w0, w);
}

} // namespace ampm::testing
