#include "ampm/filter.hpp"

#include "ampm/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace ampm {

namespace {

bool all_finite(std::span<const double> c) {
    return std::all_of(c.begin(), c.end(), [](double v) { return std::isfinite(v); });
}

// Horner in s = jw; ascending coefficients.
Complex horner(std::span<const double> coeffs, Complex s) {
    Complex acc{0.0, 0.0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * s + *it;
    }
    return acc;
}

std::vector<double> poly_multiply(std::span<const double> x, std::span<const double> y) {
    std::vector<double> out(x.size() + y.size() - 1, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < y.size(); ++j) {
            out[i + j] += x[i] * y[j];
        }
    }
    return out;
}

} // namespace

Frequency::Frequency(double hz) : hz_(hz) {
    if (!std::isfinite(hz)) {
        throw InvalidParameter("frequency must be finite");
    }
}

TransferFunction::TransferFunction(std::vector<double> numerator, std::vector<double> denominator,
                                   std::optional<std::string> label)
    : num_(std::move(numerator)), den_(std::move(denominator)), label_(std::move(label)) {
    if (num_.empty()) {
        throw InvalidParameter("numerator needs at least one coefficient");
    }
    if (den_.empty()) {
        throw InvalidParameter("denominator needs at least one coefficient");
    }
    if (!all_finite(num_) || !all_finite(den_)) {
        throw InvalidParameter("transfer function coefficients must be finite");
    }
    if (den_.back() == 0.0) {
        throw InvalidParameter("highest-order denominator coefficient must be nonzero");
    }
}

TransferFunction TransferFunction::identity() { return TransferFunction({1.0}, {1.0}, "identity"); }

TransferFunction TransferFunction::with_label(std::string label) const {
    TransferFunction copy = *this;
    copy.label_ = std::move(label);
    return copy;
}

Complex evaluate(const TransferFunction& tf, Frequency f, const EvaluateOptions& opts) {
    const Complex s{0.0, f.rad_per_s()};
    const Complex den = horner(tf.denominator(), s);
    const double den_mag = std::abs(den);
    if (!(den_mag >= opts.singular_floor)) {
        throw SingularEvaluation(f.hz(), den_mag);
    }
    return horner(tf.numerator(), s) / den;
}

TransferFunction one_pole_lowpass(Frequency f0) {
    if (!(f0.hz() > 0.0)) {
        throw InvalidParameter("one-pole corner frequency must be > 0");
    }
    const double w0 = f0.rad_per_s();
    char label[64];
    std::snprintf(label, sizeof label, "onepole_lp f0=%.17g", f0.hz());
    return TransferFunction({w0}, {w0, 1.0}, std::string(label));
}

TransferFunction cascade(const TransferFunction& first, const TransferFunction& second) {
    std::optional<std::string> label;
    if (first.label() && second.label()) {
        label = *first.label() + " * " + *second.label();
    }
    return TransferFunction(poly_multiply(first.numerator(), second.numerator()),
                            poly_multiply(first.denominator(), second.denominator()),
                            std::move(label));
}

double coefficient_dynamic_range(const TransferFunction& tf) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (auto coeffs : {tf.numerator(), tf.denominator()}) {
        for (double c : coeffs) {
            if (c != 0.0) {
                lo = std::min(lo, std::abs(c));
                hi = std::max(hi, std::abs(c));
            }
        }
    }
    return hi > 0.0 ? hi / lo : 1.0;
}

std::vector<std::string> lint(const TransferFunction& tf) {
    std::vector<std::string> warnings;
    const double range = coefficient_dynamic_range(tf);
    if (range > 1e12) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "coefficient dynamic range %.3g exceeds 1e12; Horner evaluation may lose "
                      "precision (consider normalizing frequency)",
                      range);
        warnings.emplace_back(msg);
    }
    return warnings;
}

} // namespace ampm
