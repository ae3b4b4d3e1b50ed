#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "latticewave/lattice.hpp"

namespace latticewave::relativity {

using lattice::BlochMode;
using lattice::Complex;
using lattice::LatticeSpec;

// A boost with speed V along +x.  Unprimed coordinates are the lattice rest
// frame; primed coordinates are the frame in which the lattice moves at -V
// (i.e. the frame of an observer travelling at +V through the lattice).
struct FrameBoost {
    double V = 0.0;
    double c = 1.0;
    double gamma = 1.0;
    static FrameBoost make(double V, double c = 1.0);
    FrameBoost inverse() const;
    double beta() const { return V / c; }
};

// (x, t) in the rest frame -> (x', t') in the moving frame.
std::pair<double, double> boost_event(double x, double t,
                                      const FrameBoost& boost);

// Doppler shift of a plane-wave pair (omega, kx):
//   omega' = gamma (omega - V kx),  kx' = gamma (kx - V omega / c^2).
std::pair<double, double> doppler_plane_wave(double omega, double kx,
                                             const FrameBoost& boost);

// Wavenumbers of a free wave of rest-frame wavenumber k = omega/c seen in the
// moving frame: {k sqrt((1+beta)/(1-beta)), k sqrt((1-beta)/(1+beta))}
// (counter-propagating blue shift, co-propagating red shift).
std::pair<double, double> doppler_wavenumbers(double k,
                                              const FrameBoost& boost);

// Field of a rest-frame Bloch mode observed at (x', t') in the moving frame:
// phi(x) e^{-i omega t} evaluated at the inverse-boosted event.
Complex moving_lattice_field(const BlochMode& mode, const FrameBoost& boost,
                             double xp, double tp);

// One diffracted component of the mode as seen in the moving frame: the plane
// wave amplitude c_m exp(i[k'_m x' - omega'_m t']) with
//   omega'_m = gamma [omega - V (K + 2 pi m / a)]
//   k'_m     = gamma [(K + 2 pi m / a) - V omega / c^2].
struct MovingModeComponent {
    int m = 0;
    double omega_prime = 0.0;
    double k_prime = 0.0;
    Complex amplitude = 0.0;
};

// All components with m in [m_min, m_max].
std::vector<MovingModeComponent> moving_frame_spectrum(const BlochMode& mode,
                                                       const FrameBoost& boost,
                                                       int m_min, int m_max);

// Automatic range: starts at [-64, 64] and widens until the captured Parseval
// weight reaches 1 - 1e-8 of the full periodic-part norm.
std::vector<MovingModeComponent> moving_frame_spectrum(const BlochMode& mode,
                                                       const FrameBoost& boost);

// The subset of components with omega' < 0.
std::vector<MovingModeComponent> negative_frequency_set(
    const std::vector<MovingModeComponent>& spectrum);

} // namespace latticewave::relativity
