#include "latticewave/relativity.hpp"

#include <cmath>
#include <numbers>

#include "latticewave/quantum.hpp"

namespace latticewave::relativity {

FrameBoost FrameBoost::make(double V, double c) {
    if (!(c > 0.0)) throw ConfigError("FrameBoost: c must be > 0");
    if (!(std::abs(V) < c)) throw ConfigError("FrameBoost: |V| must be < c");
    FrameBoost b;
    b.V = V;
    b.c = c;
    b.gamma = 1.0 / std::sqrt(1.0 - (V / c) * (V / c));
    return b;
}

FrameBoost FrameBoost::inverse() const { return FrameBoost::make(-V, c); }

std::pair<double, double> boost_event(double x, double t,
                                      const FrameBoost& b) {
    return {b.gamma * (x - b.V * t), b.gamma * (t - b.V * x / (b.c * b.c))};
}

std::pair<double, double> doppler_plane_wave(double omega, double kx,
                                             const FrameBoost& b) {
    return {b.gamma * (omega - b.V * kx),
            b.gamma * (kx - b.V * omega / (b.c * b.c))};
}

std::pair<double, double> doppler_wavenumbers(double k, const FrameBoost& b) {
    const double beta = b.beta();
    return {k * std::sqrt((1.0 + beta) / (1.0 - beta)),
            k * std::sqrt((1.0 - beta) / (1.0 + beta))};
}

Complex moving_lattice_field(const BlochMode& mode, const FrameBoost& boost,
                             double xp, double tp) {
    // Inverse boost back to the lattice rest frame.
    const auto [x, t] = boost_event(xp, tp, boost.inverse());
    const Complex I(0.0, 1.0);
    return lattice::mode_field(mode, x) * std::exp(-I * (mode.omega * t));
}

std::vector<MovingModeComponent> moving_frame_spectrum(const BlochMode& mode,
                                                       const FrameBoost& boost,
                                                       int m_min, int m_max) {
    std::vector<MovingModeComponent> out;
    const double Q = 2.0 * std::numbers::pi / mode.spec.a;
    const double c2 = boost.c * boost.c;
    for (int m = m_min; m <= m_max; ++m) {
        MovingModeComponent comp;
        comp.m = m;
        const double kx = mode.K + Q * m;
        comp.omega_prime = boost.gamma * (mode.omega - boost.V * kx);
        comp.k_prime = boost.gamma * (kx - boost.V * mode.omega / c2);
        comp.amplitude = quantum::fourier_coefficient_u(mode, m);
        out.push_back(comp);
    }
    return out;
}

std::vector<MovingModeComponent> moving_frame_spectrum(
    const BlochMode& mode, const FrameBoost& boost) {
    // Parseval weight of the full normalized periodic part: (1/a) int |Nu|^2
    // over a cell, which is 1 minus the lumped scatterer-site weight.
    const double w = mode.k * mode.spec.a;
    const double site = (mode.spec.alpha / mode.spec.a) * std::norm(mode.N) *
                        std::sin(w) * std::sin(w);
    const double target = (1.0 - 1e-8) * (1.0 - site);
    int half = 64;
    for (;;) {
        double captured = 0.0;
        for (int m = -half; m <= half; ++m)
            captured += std::norm(quantum::fourier_coefficient_u(mode, m));
        if (captured >= target || half > (1 << 20))
            return moving_frame_spectrum(mode, boost, -half, half);
        half *= 2;
    }
}

std::vector<MovingModeComponent> negative_frequency_set(
    const std::vector<MovingModeComponent>& spectrum) {
    std::vector<MovingModeComponent> out;
    for (const auto& c : spectrum)
        if (c.omega_prime < 0.0) out.push_back(c);
    return out;
}

} // namespace latticewave::relativity
