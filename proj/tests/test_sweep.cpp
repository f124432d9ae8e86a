#include "ampm/error.hpp"
#include "ampm/sweep.hpp"

#include <doctest.h>

#include <cstring>
#include <random>

using namespace ampm;

namespace {

SweepSpec corner_sweep(std::size_t points, Spacing spacing) {
    return SweepSpec{
        .tf = one_pole_lowpass(Frequency(10e6)),
        .fc = Frequency(10e6),
        .fm_start = Frequency(10e3),
        .fm_stop = Frequency(1e6),
        .points = points,
        .spacing = spacing,
    };
}

} // namespace

TEST_CASE("grid construction") {
    const auto log_grid = sweep_grid(corner_sweep(3, Spacing::Logarithmic));
    REQUIRE(log_grid.size() == 3);
    CHECK(log_grid[0] == 10e3);
    CHECK(log_grid[1] == doctest::Approx(100e3).epsilon(1e-14));
    CHECK(log_grid[2] == 1e6);

    const auto lin_grid = sweep_grid(corner_sweep(5, Spacing::Linear));
    CHECK(lin_grid[2] == doctest::Approx(505e3));
    CHECK(lin_grid.back() == 1e6);
}

TEST_CASE("sweep spec validation") {
    SweepSpec s = corner_sweep(3, Spacing::Linear);
    s.points = 1;
    CHECK_THROWS_AS(run_sweep(s), InvalidParameter);
    s = corner_sweep(3, Spacing::Linear);
    s.fm_stop = s.fm_start;
    CHECK_THROWS_AS(run_sweep(s), InvalidParameter);
    s = corner_sweep(3, Spacing::Linear);
    s.fm_stop = Frequency(10e6);
    CHECK_THROWS_AS(run_sweep(s), InvalidParameter);
    s = corner_sweep(3, Spacing::Linear);
    s.fm_start = Frequency(0.0);
    CHECK_THROWS_AS(run_sweep(s), InvalidParameter);
}

TEST_CASE("-43 dB row of a log sweep") {
    const auto rows = run_sweep(corner_sweep(3, Spacing::Logarithmic));
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].ok());
    CHECK(rows[1].am_pm_db == doctest::Approx(-43.0103).epsilon(1e-5));
    // hd grows in proportion to fm: a decade is +20 dB.
    CHECK(rows[1].am_pm_db - rows[0].am_pm_db == doctest::Approx(20.0).epsilon(1e-3));
    CHECK(rows[2].am_pm_db - rows[1].am_pm_db == doctest::Approx(20.0).epsilon(1e-3));
}

TEST_CASE("identity filter sweeps flat") {
    SweepSpec s = corner_sweep(17, Spacing::Linear);
    s.tf = TransferFunction::identity();
    for (const SweepRow& row : run_sweep(s)) {
        CHECK(row.hd_mag == 0.0);
        CHECK(row.hc_mag == 1.0);
        CHECK(row.am_am_db == 0.0);
    }
}

TEST_CASE("am_pm_db is monotone in fm for a one-pole with f0 >= fc") {
    for (double k : {1.0, 2.0, 10.0, 100.0}) {
        SweepSpec s = corner_sweep(200, Spacing::Logarithmic);
        s.tf = one_pole_lowpass(Frequency(k * 10e6));
        s.fm_start = Frequency(1.0);
        s.fm_stop = Frequency(100e3);
        const auto rows = run_sweep(s);
        for (std::size_t i = 1; i < rows.size(); ++i) {
            CHECK(rows[i].am_pm_db - rows[i - 1].am_pm_db >= -0.01);
        }
    }
}

TEST_CASE("per-point failures are marked and the sweep continues") {
    // Undamped resonance at 10 MHz + 50 kHz: singular exactly at that USB.
    const double fc = 10e6;
    const double w = Frequency(fc + 50e3).rad_per_s();
    SweepSpec s{
        .tf = TransferFunction({w * w}, {w * w, 0.0, 1.0}),
        .fc = Frequency(fc),
        .fm_start = Frequency(25e3),
        .fm_stop = Frequency(75e3),
        .points = 3,
        .spacing = Spacing::Linear,
    };
    const auto rows = run_sweep(s);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].ok());
    CHECK_FALSE(rows[1].ok());
    CHECK(rows[1].status == "singular");
    CHECK(rows[1].fm_hz == 50e3);
    CHECK(rows[1].message.find("Hz") != std::string::npos);
    CHECK(rows[2].ok());
}

TEST_CASE("sweeps are deterministic") {
    const auto a = run_sweep(corner_sweep(101, Spacing::Logarithmic));
    const auto b = run_sweep(corner_sweep(101, Spacing::Logarithmic));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(std::memcmp(&a[i].fm_hz, &b[i].fm_hz, sizeof(double) * 8) == 0);
    }
}

TEST_CASE("rule of thumb solver") {
    SUBCASE("60 dB at 100 kHz / 10 MHz gives k = 10") {
        const auto r = min_bandwidth_ratio({Frequency(100e3), Frequency(10e6), 60.0});
        CHECK(std::abs(r.k - 10.0) < 1e-9);
        CHECK(r.f0.hz() == doctest::Approx(100e6).epsilon(1e-12));
        CHECK(r.predicted_db == doctest::Approx(-60.043222167418367).epsilon(1e-12));
        CHECK_FALSE(r.outside_approximation);
    }
    SUBCASE("43 dB gives k close to sqrt(2)") {
        const auto r = min_bandwidth_ratio({Frequency(100e3), Frequency(10e6), 43.0});
        CHECK(r.k == doctest::Approx(1.4125375446227543).epsilon(1e-14));
    }
    SUBCASE("tiny isolation drives k below one and raises the flag") {
        const auto r = min_bandwidth_ratio({Frequency(1.0), Frequency(1e6), 0.01});
        CHECK(r.k == doctest::Approx(1e-6 * 1.0011520).epsilon(1e-6));
        CHECK(r.outside_approximation);
        // Exact recomputation exposes the breakdown: far from -0.01 dB.
        CHECK(r.predicted_db < -100.0);
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(min_bandwidth_ratio({Frequency(20e6), Frequency(10e6), 60.0}), InvalidParameter);
        CHECK_THROWS_AS(min_bandwidth_ratio({Frequency(0.0), Frequency(10e6), 60.0}), InvalidParameter);
        CHECK_THROWS_AS(min_bandwidth_ratio({Frequency(1e3), Frequency(10e6), 0.0}), InvalidParameter);
        CHECK_THROWS_AS(min_bandwidth_ratio({Frequency(1e3), Frequency(10e6), -3.0}), InvalidParameter);
    }
    SUBCASE("approximation band: within 1.5 dB for k >= 2, fm/fc <= 1e-2") {
        for (double k : {2.0, 5.0, 10.0, 100.0}) {
            for (double ratio : {1e-4, 1e-3, 1e-2}) {
                const double fc = 10e6;
                const double isolation = 20.0 * std::log10(k / ratio);
                const auto r = min_bandwidth_ratio({Frequency(ratio * fc), Frequency(fc), isolation});
                CHECK(r.k == doctest::Approx(k).epsilon(1e-12));
                CHECK(std::abs(r.predicted_db + isolation) <= 1.5);
            }
        }
    }
}
