#include "doctest.h"

#include <cmath>
#include <numbers>

#include "latticewave/quantum.hpp"
#include "latticewave/relativity.hpp"

using namespace latticewave;
using namespace latticewave::relativity;

TEST_CASE("boost preserves the interval and inverts") {
    const auto b = FrameBoost::make(0.6, 1.0);
    const double x = 1.7, t = -0.4;
    const auto [xp, tp] = boost_event(x, t, b);
    CHECK(xp * xp - tp * tp == doctest::Approx(x * x - t * t).epsilon(1e-12));
    const auto [xb, tb] = boost_event(xp, tp, b.inverse());
    CHECK(xb == doctest::Approx(x).epsilon(1e-12));
    CHECK(tb == doctest::Approx(t).epsilon(1e-12));
}

TEST_CASE("plane-wave Doppler: invariant mass and free-wave factors") {
    const auto b = FrameBoost::make(0.3, 1.0);
    const double w = 1.2, k = 0.8;
    const auto [wp, kp] = doppler_plane_wave(w, k, b);
    CHECK(wp * wp - kp * kp == doctest::Approx(w * w - k * k).epsilon(1e-12));
    // On-shell forward/backward waves reproduce the sqrt Doppler factors.
    const auto [kfwd, kbwd] = doppler_wavenumbers(1.0, b);
    const auto [wf, kf] = doppler_plane_wave(1.0, -1.0, b);
    CHECK(wf == doctest::Approx(kfwd).epsilon(1e-12));
    const auto [wb, kb2] = doppler_plane_wave(1.0, 1.0, b);
    CHECK(wb == doctest::Approx(kbwd).epsilon(1e-12));
}

TEST_CASE("moving field equals its frequency-comb expansion") {
    lattice::LatticeSpec spec{1.0, 1.0, 1.0};
    lattice::BlochMode mode = lattice::make_mode(spec, 1, 1.2);
    const auto b = FrameBoost::make(0.5, 1.0);
    auto comps = moving_frame_spectrum(mode, b, -200, 200);
    const Complex I(0.0, 1.0);
    for (double xp : {-0.37, 0.18}) {
        for (double tp : {0.0, 0.9}) {
            Complex sum = 0.0;
            for (const auto& c : comps)
                sum += c.amplitude *
                       std::exp(I * (c.k_prime * xp - c.omega_prime * tp));
            const Complex direct = moving_lattice_field(mode, b, xp, tp);
            CHECK(std::abs(sum - direct) < 1e-4);
        }
    }
}

TEST_CASE("Parseval closure of the automatic spectrum") {
    lattice::LatticeSpec spec{1.0, 1.0, 1.0};
    lattice::BlochMode mode = lattice::make_mode(spec, 2, 0.8);
    const auto b = FrameBoost::make(0.4, 1.0);
    auto comps = moving_frame_spectrum(mode, b);
    double total = 0.0;
    for (const auto& c : comps) total += std::norm(c.amplitude);
    const double site = spec.alpha * std::norm(mode.N) *
                        std::sin(mode.k) * std::sin(mode.k);
    CHECK(total + site == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("negative frequencies appear only above the Cherenkov threshold") {
    lattice::LatticeSpec spec{1.0, 1.0, 1.0};
    lattice::BlochMode mode = lattice::make_mode(spec, 1, 0.05);
    // Long-wavelength mode: phase velocity ~ c/n = 1/sqrt(2).
    auto below = negative_frequency_set(
        moving_frame_spectrum(mode, FrameBoost::make(0.3, 1.0), -64, 64));
    auto above = negative_frequency_set(
        moving_frame_spectrum(mode, FrameBoost::make(0.9, 1.0), -64, 64));
    // m = 0 flips sign only above threshold.
    bool m0_below = false, m0_above = false;
    for (const auto& c : below) m0_below |= (c.m == 0);
    for (const auto& c : above) m0_above |= (c.m == 0);
    CHECK(!m0_below);
    CHECK(m0_above);
    // m > 0 components are dragged negative at any V > 0.
    CHECK(!below.empty());
}

TEST_CASE("alpha = 0: spectrum collapses to the free wave") {
    lattice::LatticeSpec spec{0.0, 1.0, 1.0};
    lattice::BlochMode mode = lattice::make_mode(spec, 1, 0.7);
    auto comps = moving_frame_spectrum(mode, FrameBoost::make(0.5, 1.0), -3, 3);
    for (const auto& c : comps) {
        if (c.m == 0) CHECK(std::abs(c.amplitude - 1.0) < 1e-12);
        else CHECK(std::abs(c.amplitude) < 1e-12);
    }
}
