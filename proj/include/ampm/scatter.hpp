#pragma once

#include "ampm/filter.hpp"

namespace ampm {

/// Modulation indices below this are inside the small-index regime where
/// the three-line (carrier plus first sidebands) model is physically meaningful.
inline constexpr double kSmallIndexLimit = 0.1;

/// Default floor on |carrier| when normalizing sidebands.
inline constexpr double kCarrierFloor = 1e-30;

/// Carrier amplitude plus AM index `a` and PM index `p`. Inputs are usually
/// real; after filtering all three are complex.
struct ModulationState {
    Complex amplitude{1.0, 0.0};
    Complex am_index{0.0, 0.0};
    Complex pm_index{0.0, 0.0};

    /// Throws InvalidParameter on non-finite fields or zero amplitude.
    void validate() const;

    bool within_small_index() const noexcept {
        return std::abs(am_index) <= kSmallIndexLimit && std::abs(pm_index) <= kSmallIndexLimit;
    }
};

/// Complex line amplitudes at fc - fm, fc and fc + fm.
struct SidebandTriplet {
    Complex lsb;
    Complex carrier;
    Complex usb;
    Frequency fc;
    Frequency fm;
};

/// Common/differential response of a filter for one (fc, fm) pair, i.e. the
/// symmetric 2x2 map [[hc, hd], [hd, hc]] from (a, p) to (a', p').
struct ScatterResult {
    Complex hc;
    Complex hd;
    Complex carrier_gain; ///< H(j w_c)
    Frequency fc;
    Frequency fm;

    /// 20 log10 |hc|; -inf when hc == 0.
    double am_am_db() const noexcept;
    /// 20 log10 |hd|; -inf when hd == 0.
    double am_pm_db() const noexcept;
    double carrier_gain_db() const noexcept;
};

/// 20 log10 |z|, -inf for zero magnitude.
double magnitude_db(Complex z) noexcept;

/// lsb = A(a - p)/2, usb = A(a + p)/2, carrier = A.
SidebandTriplet sidebands_from_indices(const ModulationState& m, Frequency fc, Frequency fm);

/// a = (usb + lsb)/carrier, p = (usb - lsb)/carrier, A = carrier.
/// Throws DegenerateCarrier if |carrier| < carrier_floor.
ModulationState indices_from_sidebands(const SidebandTriplet& s, double carrier_floor = kCarrierFloor);

/// hc = (H(jw_u) + H(jw_l)) / 2H(jw_c), hd = (H(jw_u) - H(jw_l)) / 2H(jw_c),
/// always from three point evaluations of the filter.
ScatterResult compute_scatter(const TransferFunction& tf, Frequency fc, Frequency fm,
                              const EvaluateOptions& opts = {}, double carrier_floor = kCarrierFloor);

/// a' = hc a + hd p, p' = hd a + hc p, A' = H(jw_c) A.
ModulationState apply_scatter(const ScatterResult& r, const ModulationState& m);

/// Same map as apply_scatter, but routed through the sideband view: each line
/// is weighted by the filter response at its own frequency and converted back.
ModulationState propagate_via_sidebands(const TransferFunction& tf, const ModulationState& m,
                                        Frequency fc, Frequency fm, const EvaluateOptions& opts = {},
                                        double carrier_floor = kCarrierFloor);

} // namespace ampm
