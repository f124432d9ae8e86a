#include "ampm/sweep.hpp"

#include "ampm/error.hpp"

#include <cmath>
#include <numbers>

namespace ampm {

namespace {

double phase_deg(Complex z) { return std::arg(z) * 180.0 / std::numbers::pi; }

} // namespace

void SweepSpec::validate() const {
    if (!(fm_start.hz() > 0.0)) {
        throw InvalidParameter("fm start must be > 0");
    }
    if (!(fm_stop > fm_start)) {
        throw InvalidParameter("fm stop must be greater than fm start");
    }
    if (!(fm_stop < fc)) {
        throw InvalidParameter("fm stop must be below the carrier frequency");
    }
    if (points < 2) {
        throw InvalidParameter("a sweep needs at least 2 points");
    }
}

SweepRow SweepRow::from_scatter(const ScatterResult& r) {
    SweepRow row;
    row.fm_hz = r.fm.hz();
    row.hc_mag = std::abs(r.hc);
    row.hc_phase_deg = phase_deg(r.hc);
    row.hd_mag = std::abs(r.hd);
    row.hd_phase_deg = phase_deg(r.hd);
    row.am_am_db = r.am_am_db();
    row.am_pm_db = r.am_pm_db();
    row.carrier_gain_db = r.carrier_gain_db();
    return row;
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
    spec.validate();
    const double start = spec.fm_start.hz();
    const double stop = spec.fm_stop.hz();
    const std::size_t last = spec.points - 1;
    std::vector<double> grid(spec.points);
    for (std::size_t i = 0; i <= last; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(last);
        grid[i] = spec.spacing == Spacing::Linear ? start + (stop - start) * t
                                                  : start * std::pow(stop / start, t);
    }
    grid.front() = start;
    grid.back() = stop;
    return grid;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    const std::vector<double> grid = sweep_grid(spec);
    std::vector<SweepRow> rows(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        try {
            rows[i] = SweepRow::from_scatter(compute_scatter(spec.tf, spec.fc, Frequency(grid[i])));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::SingularEvaluation && e.kind() != ErrorKind::DegenerateCarrier) {
                throw;
            }
            SweepRow failed;
            failed.fm_hz = grid[i];
            failed.status = e.token();
            failed.message = e.what();
            rows[i] = std::move(failed);
        }
    }
    return rows;
}

RuleOfThumbResult min_bandwidth_ratio(const RuleOfThumbQuery& q) {
    if (!(q.fm.hz() > 0.0) || !(q.fm < q.fc)) {
        throw InvalidParameter("rule of thumb needs 0 < fm < fc");
    }
    if (!(q.isolation_db > 0.0) || !std::isfinite(q.isolation_db)) {
        throw InvalidParameter("isolation must be a positive number of dB");
    }
    RuleOfThumbResult out;
    out.k = (q.fm.hz() / q.fc.hz()) * std::pow(10.0, q.isolation_db / 20.0);
    out.f0 = Frequency(out.k * q.fc.hz());
    out.predicted_db = compute_scatter(one_pole_lowpass(out.f0), q.fc, q.fm).am_pm_db();
    out.outside_approximation = out.k <= 1.0;
    return out;
}

} // namespace ampm
