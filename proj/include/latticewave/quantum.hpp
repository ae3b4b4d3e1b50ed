#pragma once

#include <complex>
#include <string>
#include <vector>

#include "latticewave/classical.hpp"
#include "latticewave/lattice.hpp"
#include "latticewave/relativity.hpp"

namespace latticewave::quantum {

using classical::OscillatorSpec;
using lattice::BlochMode;
using lattice::Complex;
using lattice::LatticeSpec;
using relativity::FrameBoost;

// Fourier coefficient of the normalized periodic part of the mode:
//   c_m = (1/a) int_{-a/2}^{a/2} N u(x) e^{-2 pi i m x / a} dx
//       = (alpha/a) N sin(ka) k^2 / [(K + 2 pi m/a)^2 - k^2].
Complex fourier_coefficient_u(const BlochMode& mode, int m);

// Extended-zone solutions K_m of  omega0/gamma + omega_{n,K} - V K = 0 for
// bands n = 1..bands, together with the per-root summand of the golden-rule
// absorption rate.
struct ResonanceRoot {
    int band = 0;
    int m = 0;          // ordinal of the root within its band
    double K = 0.0;     // extended zone
    double k = 0.0;     // omega_{n,K}/c at the root
    double vg = 0.0;    // group velocity at the root
    double weight = 0.0;
    bool grazing = false; // |1 - V/vg| below tolerance: summand divergent
};
std::vector<ResonanceRoot> resonance_roots(const LatticeSpec& spec,
                                           double omega0,
                                           const FrameBoost& boost,
                                           int bands = 6);

// Golden-rule excitation rate of the dragged oscillator out of its ground
// state (medium rest frame), and the same rate in the oscillator frame
// (gamma * rate).  Grazing roots are excluded from the sum and reported.
struct AbsorptionRate {
    double rate = 0.0;
    double rate_oscillator_frame = 0.0;
    std::vector<ResonanceRoot> roots;
    std::vector<std::string> warnings;
};
AbsorptionRate absorption_rate(const LatticeSpec& spec,
                               const OscillatorSpec& osc,
                               const FrameBoost& boost, int bands = 6);

// Macroscopic limit of the rate: (c kappa^2 / 4 n gamma) Theta(V n / c - 1).
double macroscopic_rate(const OscillatorSpec& osc, const FrameBoost& boost,
                        double n);

// Finite-interaction-time transition amplitude zeta_{n,K}(T/2) for an
// interaction switched on during [-T/2, T/2] with T = N a / V, N odd.
struct TransitionAmplitude {
    int band = 0;
    double K = 0.0;
    double T = 0.0;
    Complex zeta = 0.0;
};
TransitionAmplitude transition_amplitude(const LatticeSpec& spec,
                                         const OscillatorSpec& osc,
                                         const FrameBoost& boost,
                                         const BlochMode& mode, long N_cells);

// Total transition probability per unit time at finite T:
//   sum_n int_{BZ} dK/2pi |zeta_{n,K}|^2 / T.
// Converges to absorption_rate().rate as N_cells grows.
double finite_time_rate(const LatticeSpec& spec, const OscillatorSpec& osc,
                        const FrameBoost& boost, long N_cells, int bands = 6);

} // namespace latticewave::quantum
