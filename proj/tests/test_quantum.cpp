#include "doctest.h"

#include <cmath>
#include <numbers>

#include "latticewave/quantum.hpp"

using namespace latticewave;
using namespace latticewave::quantum;
using relativity::FrameBoost;

constexpr double kPi = std::numbers::pi;

TEST_CASE("fourier_coefficient_u matches direct quadrature") {
    lattice::LatticeSpec spec{1.0, 1.0, 1.0};
    lattice::BlochMode mode = lattice::make_mode(spec, 1, 1.1);
    const Complex I(0.0, 1.0);
    for (int m : {-2, -1, 0, 1, 3}) {
        auto f = [&](double x) {
            return lattice::periodic_part(mode, x) *
                   std::exp(-I * (2.0 * kPi * m * x));
        };
        const Complex direct =
            numerics::integrate(f, -0.5, 0.5, {0.0}, {1e-12, 1e-14, 200});
        CHECK(std::abs(direct - fourier_coefficient_u(mode, m)) < 1e-10);
    }
}

TEST_CASE("resonance roots solve the resonance condition") {
    lattice::LatticeSpec spec{1.0, 1.0, 1.0};
    const auto b = FrameBoost::make(0.8, 1.0);
    auto roots = resonance_roots(spec, 0.1, b, 4);
    REQUIRE(!roots.empty());
    for (const auto& r : roots) {
        const double lhs = 0.1 / b.gamma +
                           lattice::band_frequency(spec, r.band, r.K) -
                           b.V * r.K;
        CHECK(std::abs(lhs) < 1e-8);
        CHECK(r.weight >= 0.0);
    }
}

TEST_CASE("absorption rate: threshold behaviour mirrors the macroscopic rate") {
    lattice::LatticeSpec spec{1.0, 1.0, 1.0}; // n = sqrt(2)
    OscillatorSpec osc{1e-5, 0.1, 0.0, 1.0, 0.0};
    const double n = std::sqrt(2.0);
    auto below = absorption_rate(spec, osc, FrameBoost::make(0.5, 1.0));
    auto above = absorption_rate(spec, osc, FrameBoost::make(0.85, 1.0));
    const double macro_above =
        macroscopic_rate(osc, FrameBoost::make(0.85, 1.0), n);
    CHECK(macroscopic_rate(osc, FrameBoost::make(0.5, 1.0), n) == 0.0);
    CHECK(below.rate < 1e-3 * macro_above);
    CHECK(above.rate_oscillator_frame ==
          doctest::Approx(macro_above * FrameBoost::make(0.85, 1.0).gamma)
              .epsilon(0.02));
}

TEST_CASE("transition amplitude: analytic cell integral vs quadrature") {
    lattice::LatticeSpec spec{1.0, 1.0, 1.0};
    OscillatorSpec osc{0.1, 0.1, 0.0, 1.0, 0.0};
    const auto b = FrameBoost::make(0.8, 1.0);
    lattice::BlochMode mode = lattice::make_mode(spec, 1, 0.9);
    const long N = 11;
    auto amp = transition_amplitude(spec, osc, b, mode, N);

    // Reference: brute-force evaluation of the defining comb + boundary form.
    const Complex I(0.0, 1.0);
    const double chi = osc.omega0 / b.gamma + mode.omega - b.V * mode.K;
    const double beta = chi / b.V;
    const double T = N / b.V;
    auto cell = [&](double x) {
        return std::conj(lattice::periodic_part(mode, x)) *
               std::exp(I * (beta * x));
    };
    const Complex cell_int =
        numerics::integrate(cell, -0.5, 0.5, {0.0}, {1e-12, 1e-14, 200}) / b.V;
    // Dirichlet kernel as an explicit phase sum over N+1 cell centers.
    Complex comb = 0.0;
    for (long l = 0; l <= N; ++l)
        comb += std::exp(I * (beta * (l - 0.5 * N)));
    const Complex u_half = std::conj(lattice::periodic_part(mode, 0.5));
    const Complex bracket =
        (osc.omega0 / (2.0 * b.gamma)) * std::exp(-I * (0.5 * beta)) * comb *
            cell_int -
        u_half * std::sin(0.5 * chi * T);
    const Complex zeta_ref = I * osc.kappa *
                             std::sqrt(1.0 / (osc.omega0 * mode.omega)) *
                             bracket;
    CHECK(std::abs(amp.zeta - zeta_ref) < 1e-9 * (1.0 + std::abs(zeta_ref)));
    CHECK(amp.T == doctest::Approx(T).epsilon(1e-14));
}

TEST_CASE("finite-time rate approaches the golden-rule rate") {
    lattice::LatticeSpec spec{1.0, 1.0, 1.0};
    OscillatorSpec osc{0.1, 0.1, 0.0, 1.0, 0.0};
    const auto b = FrameBoost::make(0.8, 1.0);
    const double golden = absorption_rate(spec, osc, b).rate;
    const double finite = finite_time_rate(spec, osc, b, 2001);
    CHECK(finite == doctest::Approx(golden).epsilon(0.05));
}

TEST_CASE("transition amplitude input validation") {
    lattice::LatticeSpec spec{1.0, 1.0, 1.0};
    OscillatorSpec osc{0.1, 0.1, 0.0, 1.0, 0.0};
    lattice::BlochMode mode = lattice::make_mode(spec, 1, 0.9);
    CHECK_THROWS_AS(transition_amplitude(spec, osc, FrameBoost::make(0.8, 1.0),
                                         mode, 10),
                    ConfigError);
    CHECK_THROWS_AS(transition_amplitude(spec, osc, FrameBoost::make(0.0, 1.0),
                                         mode, 11),
                    ConfigError);
}
