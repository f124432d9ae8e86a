#pragma once

#include "ampm/filter.hpp"
#include "ampm/scatter.hpp"

#include <string>
#include <vector>

namespace ampm {

enum class Spacing { Linear, Logarithmic };

struct SweepSpec {
    TransferFunction tf;
    Frequency fc;
    Frequency fm_start;
    Frequency fm_stop;
    std::size_t points = 2;
    Spacing spacing = Spacing::Logarithmic;

    void validate() const;
};

struct SweepRow {
    double fm_hz = 0.0;
    double hc_mag = 0.0;
    double hc_phase_deg = 0.0;
    double hd_mag = 0.0;
    double hd_phase_deg = 0.0;
    double am_am_db = 0.0;
    double am_pm_db = 0.0;
    double carrier_gain_db = 0.0;
    /// "ok", or the error token of the failure at this fm.
    std::string status = "ok";
    /// Diagnostic text for failed rows.
    std::string message;

    bool ok() const noexcept { return status == "ok"; }

    static SweepRow from_scatter(const ScatterResult& r);
};

/// Grid over fm, endpoints inclusive; logarithmic spacing is geometric.
std::vector<double> sweep_grid(const SweepSpec& spec);

/// One row per grid point, ascending fm. A failure at one point is recorded
/// in that row's status and the sweep continues.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

struct RuleOfThumbQuery {
    Frequency fm;
    Frequency fc;
    double isolation_db = 0.0; ///< required AM->PM suppression, positive dB
};

struct RuleOfThumbResult {
    double k = 0.0;
    Frequency f0;
    /// Exact AM->PM figure of a one-pole lowpass at f0, not the approximation.
    double predicted_db = 0.0;
    /// Set when k <= 1: the f_m/(k f_c) approximation assumes f0 above fc.
    bool outside_approximation = false;
};

/// Bandwidth ratio k such that fm/(k fc) meets the requested isolation.
RuleOfThumbResult min_bandwidth_ratio(const RuleOfThumbQuery& q);

} // namespace ampm
