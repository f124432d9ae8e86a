#pragma once

#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ampm {

using Complex = std::complex<double>;

/// A frequency in Hz. Sign is not constrained here; operations that need
/// strictly positive frequencies validate on entry.
class Frequency {
public:
    constexpr Frequency() = default;
    explicit Frequency(double hz);

    static Frequency hz(double v) { return Frequency(v); }

    constexpr double hz() const noexcept { return hz_; }
    constexpr double rad_per_s() const noexcept { return 2.0 * std::numbers::pi * hz_; }

    friend constexpr auto operator<=>(const Frequency&, const Frequency&) = default;

private:
    double hz_ = 0.0;
};

/// Rational H(s) = N(s)/D(s), coefficients in ascending powers of s (rad/s).
class TransferFunction {
public:
    /// Throws InvalidParameter unless every coefficient is finite and the
    /// highest-order denominator coefficient is nonzero.
    TransferFunction(std::vector<double> numerator, std::vector<double> denominator,
                     std::optional<std::string> label = std::nullopt);

    static TransferFunction identity();

    std::span<const double> numerator() const noexcept { return num_; }
    std::span<const double> denominator() const noexcept { return den_; }
    const std::optional<std::string>& label() const noexcept { return label_; }

    TransferFunction with_label(std::string label) const;

    friend bool operator==(const TransferFunction&, const TransferFunction&) = default;

private:
    std::vector<double> num_;
    std::vector<double> den_;
    std::optional<std::string> label_;
};

struct EvaluateOptions {
    /// |D(jw)| below this raises SingularEvaluation.
    double singular_floor = 1e-300;
};

/// H(j 2 pi f) by Horner evaluation of numerator and denominator.
Complex evaluate(const TransferFunction& tf, Frequency f, const EvaluateOptions& opts = {});

/// Stable one-pole lowpass w0/(s + w0) with w0 = 2 pi f0.
TransferFunction one_pole_lowpass(Frequency f0);

/// Series connection: numerators and denominators multiplied.
TransferFunction cascade(const TransferFunction& first, const TransferFunction& second);

/// Largest over smallest nonzero coefficient magnitude across N and D.
double coefficient_dynamic_range(const TransferFunction& tf);

/// Advisory warnings (coefficient scaling); empty when the filter looks sane.
std::vector<std::string> lint(const TransferFunction& tf);

/// Parse the line-oriented filter-spec text format.
///
///     # comment
///     label: optional free text
///     num: c0 c1 c2 ...      (ascending powers of s)
///     den: c0 c1 c2 ...
///
/// or, instead of num/den, a single prototype line such as
///
///     onepole_lp f0=10e6
///
/// Throws ParseError (with line/column) on malformed text and
/// InvalidParameter on out-of-range prototype parameters.
TransferFunction parse_filter_spec(std::string_view text);

/// Serialize as num/den lines with round-trip precision.
std::string to_filter_spec(const TransferFunction& tf);

/// Build a filter from a prototype descriptor, e.g. "onepole_lp:10e6".
TransferFunction prototype_from_descriptor(std::string_view descriptor);

} // namespace ampm
