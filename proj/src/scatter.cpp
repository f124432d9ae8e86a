#include "ampm/scatter.hpp"

#include "ampm/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ampm {

namespace {

// Conjugate-multiply division after an exact power-of-two rescale of the
// divisor. Unlike the library operator, x/x comes out as exactly 1.
Complex divide(Complex num, Complex den) {
    const int exp = std::ilogb(std::max(std::abs(den.real()), std::abs(den.imag())));
    const Complex d(std::scalbn(den.real(), -exp), std::scalbn(den.imag(), -exp));
    const Complex n(std::scalbn(num.real(), -exp), std::scalbn(num.imag(), -exp));
    const double mag2 = d.real() * d.real() + d.imag() * d.imag();
    return Complex((n.real() * d.real() + n.imag() * d.imag()) / mag2,
                   (n.imag() * d.real() - n.real() * d.imag()) / mag2);
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check_frequencies(Frequency fc, Frequency fm) {
    if (!(fm.hz() >= 0.0)) {
        throw InvalidParameter("modulation frequency must be >= 0");
    }
    if (!(fm < fc)) {
        throw InvalidParameter("modulation frequency must be below the carrier frequency");
    }
}

} // namespace

void ModulationState::validate() const {
    if (!finite(amplitude) || !finite(am_index) || !finite(pm_index)) {
        throw InvalidParameter("modulation state must be finite");
    }
    if (std::abs(amplitude) == 0.0) {
        throw InvalidParameter("carrier amplitude must be nonzero");
    }
}

double magnitude_db(Complex z) noexcept {
    const double mag = std::abs(z);
    if (mag == 0.0) {
        return -std::numeric_limits<double>::infinity();
    }
    return 20.0 * std::log10(mag);
}

double ScatterResult::am_am_db() const noexcept { return magnitude_db(hc); }
double ScatterResult::am_pm_db() const noexcept { return magnitude_db(hd); }
double ScatterResult::carrier_gain_db() const noexcept { return magnitude_db(carrier_gain); }

SidebandTriplet sidebands_from_indices(const ModulationState& m, Frequency fc, Frequency fm) {
    m.validate();
    check_frequencies(fc, fm);
    const Complex half_amp = m.amplitude * 0.5;
    return SidebandTriplet{
        .lsb = half_amp * (m.am_index - m.pm_index),
        .carrier = m.amplitude,
        .usb = half_amp * (m.am_index + m.pm_index),
        .fc = fc,
        .fm = fm,
    };
}

ModulationState indices_from_sidebands(const SidebandTriplet& s, double carrier_floor) {
    const double carrier_mag = std::abs(s.carrier);
    if (!(carrier_mag >= carrier_floor)) {
        throw DegenerateCarrier(carrier_mag);
    }
    return ModulationState{
        .amplitude = s.carrier,
        .am_index = divide(s.usb + s.lsb, s.carrier),
        .pm_index = divide(s.usb - s.lsb, s.carrier),
    };
}

ScatterResult compute_scatter(const TransferFunction& tf, Frequency fc, Frequency fm,
                              const EvaluateOptions& opts, double carrier_floor) {
    check_frequencies(fc, fm);
    const Complex h_lower = evaluate(tf, Frequency(fc.hz() - fm.hz()), opts);
    const Complex h_carrier = evaluate(tf, fc, opts);
    const Complex h_upper = evaluate(tf, Frequency(fc.hz() + fm.hz()), opts);

    const double carrier_mag = std::abs(h_carrier);
    if (!(carrier_mag >= carrier_floor)) {
        throw DegenerateCarrier(carrier_mag);
    }
    const Complex two_carrier = 2.0 * h_carrier;
    return ScatterResult{
        .hc = divide(h_upper + h_lower, two_carrier),
        .hd = divide(h_upper - h_lower, two_carrier),
        .carrier_gain = h_carrier,
        .fc = fc,
        .fm = fm,
    };
}

ModulationState apply_scatter(const ScatterResult& r, const ModulationState& m) {
    m.validate();
    return ModulationState{
        .amplitude = r.carrier_gain * m.amplitude,
        .am_index = r.hc * m.am_index + r.hd * m.pm_index,
        .pm_index = r.hd * m.am_index + r.hc * m.pm_index,
    };
}

ModulationState propagate_via_sidebands(const TransferFunction& tf, const ModulationState& m,
                                        Frequency fc, Frequency fm, const EvaluateOptions& opts,
                                        double carrier_floor) {
    SidebandTriplet lines = sidebands_from_indices(m, fc, fm);
    lines.lsb *= evaluate(tf, Frequency(fc.hz() - fm.hz()), opts);
    lines.carrier *= evaluate(tf, fc, opts);
    lines.usb *= evaluate(tf, Frequency(fc.hz() + fm.hz()), opts);
    return indices_from_sidebands(lines, carrier_floor);
}

} // namespace ampm
