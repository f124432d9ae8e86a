#pragma once

#include "ampm/filter.hpp"
#include "ampm/scatter.hpp"

#include <span>
#include <vector>

namespace ampm::oracle {

enum class SynthesisMethod {
    /// Exact A(1 + a cos wm t) cos(p sin wm t + wc t); all Bessel orders present.
    FullWaveform,
    /// Carrier plus first-order sidebands only (the small-index line model).
    SpectralLines,
};

/// A coherently sampled test waveform: fc, fm and fc +/- fm all sit on DFT bins.
struct WaveformSpec {
    Frequency fc;
    Frequency fm;
    double amplitude = 1.0;
    double am_index = 0.0;
    double pm_index = 0.0;
    std::size_t n_samples = 0;
    double sample_rate = 0.0;
    SynthesisMethod method = SynthesisMethod::FullWaveform;

    /// Picks the smallest power-of-two record that puts every line on a bin
    /// and keeps the sample rate at least 2.5 (fc + fm).
    /// Throws InvalidParameter when fc/fm has no small rational form or the
    /// record would exceed max_samples.
    static WaveformSpec coherent(Frequency fc, Frequency fm, double amplitude, double am_index,
                                 double pm_index,
                                 SynthesisMethod method = SynthesisMethod::FullWaveform,
                                 std::size_t max_samples = std::size_t{1} << 24);

    double bin_width() const noexcept { return sample_rate / static_cast<double>(n_samples); }
    /// Bin index of a line frequency; assumes validate() passed.
    std::size_t bin_of(double hz) const noexcept;

    /// Throws InvalidParameter on Nyquist or coherence violations.
    void validate() const;
};

struct DemodResult {
    Complex am_index;
    Complex pm_index;
    Complex carrier;
    /// Energy outside the three signal bins (and their mirrors), over total energy.
    double residual = 0.0;
};

struct FilteredWaveform {
    std::vector<double> samples;
    /// RMS of the imaginary part left by the inverse DFT, relative to output RMS.
    double imag_residue = 0.0;
};

/// Unnormalized forward DFT of a real record (X[k] = sum x[n] e^{-j 2 pi k n / N}).
std::vector<Complex> dft(std::span<const double> samples);

std::vector<double> synthesize(const WaveformSpec& spec);

/// Multiply every bin by H at that bin's frequency (conjugate-mirrored for the
/// negative half) and transform back.
FilteredWaveform filter_waveform_detailed(const TransferFunction& tf, std::span<const double> samples,
                                          double sample_rate, const EvaluateOptions& opts = {});

std::vector<double> filter_waveform(const TransferFunction& tf, std::span<const double> samples,
                                    double sample_rate, const EvaluateOptions& opts = {});

/// Reads the bins at fc - fm, fc, fc + fm and forms a = (U + L)/C, p = (U - L)/C.
/// Line phasors are taken relative to t = 0 (the first sample); dividing by the
/// carrier phasor puts the indices in the carrier's frame.
DemodResult demodulate(std::span<const double> samples, const WaveformSpec& spec,
                       double carrier_floor = kCarrierFloor);

struct VerifyOptions {
    SynthesisMethod method = SynthesisMethod::FullWaveform;
    double amplitude = 1.0;
};

struct VerifyReport {
    ModulationState analytic;
    DemodResult measured;
    WaveformSpec waveform;
    /// Largest of the relative discrepancies in a', p' and A' (see relative_error).
    double max_rel_err = 0.0;
};

/// Index discrepancy relative to max(|reference|, 1e-2 * depth), where depth is
/// the larger analytic index magnitude; falls back to absolute when all vanish.
double relative_error(Complex measured, Complex reference, double depth) noexcept;

/// Runs the scatter-matrix prediction and the synthesize/filter/demodulate
/// measurement for the same input and compares them.
VerifyReport verify(const TransferFunction& tf, Frequency fc, Frequency fm, double am_index,
                    double pm_index, const VerifyOptions& opts = {});

} // namespace ampm::oracle
