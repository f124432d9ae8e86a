#include "ampm/oracle.hpp"

#include "ampm/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

namespace ampm::oracle {

namespace {

// The FFTW planner is not reentrant; execution of distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

FftwBuffer make_buffer(std::size_t n) {
    auto* raw = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (raw == nullptr) {
        throw std::bad_alloc();
    }
    return FftwBuffer(raw);
}

// In-place complex transform of `data`; sign is FFTW_FORWARD or FFTW_BACKWARD.
void transform(std::vector<Complex>& data, int sign) {
    const std::size_t n = data.size();
    FftwBuffer buf = make_buffer(n);
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(n), buf.get(), buf.get(), sign, FFTW_ESTIMATE);
    }
    for (std::size_t i = 0; i < n; ++i) {
        buf[i][0] = data[i].real();
        buf[i][1] = data[i].imag();
    }
    fftw_execute(plan);
    for (std::size_t i = 0; i < n; ++i) {
        data[i] = Complex(buf[i][0], buf[i][1]);
    }
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
}

bool is_integral(double v) { return std::abs(v - std::round(v)) <= 1e-12 * std::max(1.0, std::abs(v)); }

double rms(std::span<const double> x) {
    if (x.empty()) {
        return 0.0;
    }
    double acc = 0.0;
    for (double v : x) {
        acc += v * v;
    }
    return std::sqrt(acc / static_cast<double>(x.size()));
}

} // namespace

WaveformSpec WaveformSpec::coherent(Frequency fc, Frequency fm, double amplitude, double am_index,
                                    double pm_index, SynthesisMethod method, std::size_t max_samples) {
    if (!(fm.hz() > 0.0) || !(fm < fc)) {
        throw InvalidParameter("coherent waveform needs 0 < fm < fc");
    }
    // Bin width fm/q with the smallest q that makes fc an integer bin.
    constexpr std::size_t kMaxDenominator = std::size_t{1} << 16;
    const double ratio = fc.hz() / fm.hz();
    std::size_t q = 1;
    while (q <= kMaxDenominator && !is_integral(ratio * static_cast<double>(q))) {
        ++q;
    }
    if (q > kMaxDenominator) {
        throw InvalidParameter("fc/fm has no rational form with denominator <= 65536; "
                               "cannot sample coherently");
    }
    const double carrier_bin = std::round(ratio * static_cast<double>(q));
    const double top_bin = carrier_bin + static_cast<double>(q);
    std::size_t n = 2;
    while (static_cast<double>(n) < 2.5 * top_bin) {
        n <<= 1;
        if (n > max_samples) {
            throw InvalidParameter("coherent record would exceed the sample limit");
        }
    }
    WaveformSpec spec;
    spec.fc = fc;
    spec.fm = fm;
    spec.amplitude = amplitude;
    spec.am_index = am_index;
    spec.pm_index = pm_index;
    spec.n_samples = n;
    spec.sample_rate = static_cast<double>(n) * fm.hz() / static_cast<double>(q);
    spec.method = method;
    spec.validate();
    return spec;
}

std::size_t WaveformSpec::bin_of(double hz) const noexcept {
    return static_cast<std::size_t>(std::llround(hz * static_cast<double>(n_samples) / sample_rate));
}

void WaveformSpec::validate() const {
    if (!(fm.hz() > 0.0) || !(fm < fc)) {
        throw InvalidParameter("waveform needs 0 < fm < fc");
    }
    if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
        throw InvalidParameter("waveform amplitude must be positive and finite");
    }
    if (!std::isfinite(am_index) || !std::isfinite(pm_index)) {
        throw InvalidParameter("modulation indices must be finite");
    }
    if (n_samples < 2) {
        throw InvalidParameter("waveform needs at least 2 samples");
    }
    if (!(sample_rate > 2.0 * (fc.hz() + fm.hz()))) {
        throw InvalidParameter("sample rate must exceed 2 (fc + fm)");
    }
    const double n = static_cast<double>(n_samples);
    if (!is_integral(fc.hz() * n / sample_rate) || !is_integral(fm.hz() * n / sample_rate)) {
        throw InvalidParameter("fc and fm must fall exactly on DFT bins (coherent sampling)");
    }
}

std::vector<Complex> dft(std::span<const double> samples) {
    std::vector<Complex> spectrum(samples.begin(), samples.end());
    transform(spectrum, FFTW_FORWARD);
    return spectrum;
}

std::vector<double> synthesize(const WaveformSpec& spec) {
    spec.validate();
    const std::size_t n = spec.n_samples;
    const std::size_t carrier_bin = spec.bin_of(spec.fc.hz());
    const std::size_t mod_bin = spec.bin_of(spec.fm.hz());
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
    const double amp = spec.amplitude;
    const double a = spec.am_index;
    const double p = spec.pm_index;

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Reduce bin*i modulo n before scaling so phases stay exact for long records.
        const double wc_t = step * static_cast<double>((carrier_bin * i) % n);
        const double wm_t = step * static_cast<double>((mod_bin * i) % n);
        switch (spec.method) {
        case SynthesisMethod::FullWaveform:
            out[i] = amp * (1.0 + a * std::cos(wm_t)) * std::cos(p * std::sin(wm_t) + wc_t);
            break;
        case SynthesisMethod::SpectralLines:
            out[i] = amp * (std::cos(wc_t) + 0.5 * (a + p) * std::cos(wc_t + wm_t) +
                            0.5 * (a - p) * std::cos(wc_t - wm_t));
            break;
        }
    }
    return out;
}

FilteredWaveform filter_waveform_detailed(const TransferFunction& tf, std::span<const double> samples,
                                          double sample_rate, const EvaluateOptions& opts) {
    const std::size_t n = samples.size();
    if (n < 2 || !(sample_rate > 0.0)) {
        throw InvalidParameter("filter_waveform needs >= 2 samples and a positive sample rate");
    }
    std::vector<Complex> spectrum = dft(samples);
    const double bin_hz = sample_rate / static_cast<double>(n);
    const std::size_t half = n / 2;
    for (std::size_t k = 0; k <= half; ++k) {
        spectrum[k] *= evaluate(tf, Frequency(static_cast<double>(k) * bin_hz), opts);
    }
    spectrum[0] = spectrum[0].real();
    if (n % 2 == 0) {
        // Nyquist bin is its own mirror; only the real part survives.
        spectrum[half] = spectrum[half].real();
    }
    for (std::size_t k = 1; k < n - k; ++k) {
        spectrum[n - k] = std::conj(spectrum[k]);
    }
    transform(spectrum, FFTW_BACKWARD);

    FilteredWaveform out;
    out.samples.resize(n);
    std::vector<double> imag(n);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.samples[i] = spectrum[i].real() * scale;
        imag[i] = spectrum[i].imag() * scale;
    }
    const double out_rms = rms(out.samples);
    out.imag_residue = out_rms > 0.0 ? rms(imag) / out_rms : rms(imag);
    return out;
}

std::vector<double> filter_waveform(const TransferFunction& tf, std::span<const double> samples,
                                    double sample_rate, const EvaluateOptions& opts) {
    return filter_waveform_detailed(tf, samples, sample_rate, opts).samples;
}

DemodResult demodulate(std::span<const double> samples, const WaveformSpec& spec, double carrier_floor) {
    spec.validate();
    if (samples.size() != spec.n_samples) {
        throw InvalidParameter("sample count does not match the waveform spec");
    }
    const std::vector<Complex> spectrum = dft(samples);
    const std::size_t n = spec.n_samples;
    const std::size_t lower = spec.bin_of(spec.fc.hz() - spec.fm.hz());
    const std::size_t carrier = spec.bin_of(spec.fc.hz());
    const std::size_t upper = spec.bin_of(spec.fc.hz() + spec.fm.hz());

    // A real cosine of phasor c puts c N/2 in its positive-frequency bin.
    const double to_phasor = 2.0 / static_cast<double>(n);
    const Complex lsb = spectrum[lower] * to_phasor;
    const Complex car = spectrum[carrier] * to_phasor;
    const Complex usb = spectrum[upper] * to_phasor;

    const double car_mag = std::abs(car);
    if (!(car_mag >= carrier_floor)) {
        throw DegenerateCarrier(car_mag);
    }

    double total = 0.0;
    double in_band = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double e = std::norm(spectrum[k]);
        total += e;
        const std::size_t folded = std::min(k, n - k);
        if (folded == lower || folded == carrier || folded == upper) {
            in_band += e;
        }
    }

    DemodResult out;
    out.am_index = (usb + lsb) / car;
    out.pm_index = (usb - lsb) / car;
    out.carrier = car;
    out.residual = total > 0.0 ? std::max(0.0, total - in_band) / total : 0.0;
    return out;
}

double relative_error(Complex measured, Complex reference, double depth) noexcept {
    const double denom = std::max(std::abs(reference), 1e-2 * depth);
    const double diff = std::abs(measured - reference);
    return denom > 0.0 ? diff / denom : diff;
}

VerifyReport verify(const TransferFunction& tf, Frequency fc, Frequency fm, double am_index,
                    double pm_index, const VerifyOptions& opts) {
    VerifyReport report;
    const ModulationState input{opts.amplitude, am_index, pm_index};
    report.analytic = apply_scatter(compute_scatter(tf, fc, fm), input);

    report.waveform = WaveformSpec::coherent(fc, fm, opts.amplitude, am_index, pm_index, opts.method);
    const std::vector<double> clean = synthesize(report.waveform);
    const std::vector<double> filtered = filter_waveform(tf, clean, report.waveform.sample_rate);
    report.measured = demodulate(filtered, report.waveform);

    const double depth = std::max(std::abs(report.analytic.am_index), std::abs(report.analytic.pm_index));
    report.max_rel_err = std::max({
        relative_error(report.measured.am_index, report.analytic.am_index, depth),
        relative_error(report.measured.pm_index, report.analytic.pm_index, depth),
        relative_error(report.measured.carrier, report.analytic.amplitude, 0.0),
    });
    return report;
}

} // namespace ampm::oracle
