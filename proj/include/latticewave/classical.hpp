#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "latticewave/lattice.hpp"
#include "latticewave/relativity.hpp"

namespace latticewave::classical {

using lattice::Complex;
using lattice::LatticeSpec;
using lattice::Tolerance;
using relativity::FrameBoost;

// Internal degree of freedom X(t) coupled to the field with strength kappa,
// sitting at x0 in the frame where the lattice moves.
struct OscillatorSpec {
    double omega0 = 1.0;
    double kappa = 0.1;
    double x0 = 0.0;
    double X0 = 1.0;    // X(0)
    double Xdot0 = 0.0; // dX/dt(0)
    void validate() const;
};

// --- Macroscopic (refractive index n) description -------------------------

// The two wavenumber roots k_{+-} = (omega + i eta)/c * (+-n - V/c)/(1 -+ nV/c)
// of the moving-medium dispersion function.  Throws ThresholdSingular when V
// is within rel. 1e-9 of c/n, where k_+ diverges.
std::pair<Complex, Complex> macroscopic_wavenumbers(double omega,
                                                    const FrameBoost& boost,
                                                    double n, double eta);

// Radiation damping constant: Gamma = (c kappa^2 / 4n)(sign k_+ - sign k_-),
// i.e. c kappa^2 / 2n for |V| < c/n and 0 for |V| > c/n.
double macroscopic_damping(double omega, const FrameBoost& boost, double n,
                           double kappa);

// Free decay X(t) of the oscillator with damping Gamma:
//   Xdd + Gamma Xd + omega0^2 X = 0,  X(0) = X0, Xd(0) = Xdot0.
std::vector<double> oscillator_trajectory(const OscillatorSpec& osc,
                                          double Gamma,
                                          const std::vector<double>& t_grid);

// --- Lattice response ------------------------------------------------------

// Lattice dispersion function
//   D(omega, K) = 1 + (alpha/a) k0^2 sum_n [k0^2 - (K + 2 pi n/a)^2]^{-1}
//               = 1 - alpha k0 sin(k0 a) / (2 [cos(k0 a) - cos(K a)])
// evaluated both ways (reciprocal-space sum and closed form) as a consistency
// check; k0 = omega/c.
struct DualD {
    Complex closed_form;
    Complex sum_form;
    double discrepancy = 0.0; // |closed - sum|
    int terms_used = 0;
};
DualD lattice_D(const LatticeSpec& spec, Complex omega, Complex K,
                const Tolerance& tol = {});

Complex lattice_D_closed(const LatticeSpec& spec, Complex omega, Complex K);
// Partial derivatives of the closed form w.r.t. K and omega (real arguments).
double lattice_dD_dK(const LatticeSpec& spec, double omega, double K);
double lattice_dD_domega(const LatticeSpec& spec, double omega, double K);

// Fixed-frequency Green function of the lattice: the outgoing solution of
//   [d^2/dx^2 + k0^2 (1 + alpha sum_n delta(x-na))] G = delta(x - x0)
// with k0 = omega/c, Im(omega) > 0 for convergence.
Complex green_fixed_frequency(const LatticeSpec& spec, double x, double x0,
                              Complex omega, const Tolerance& tol = {});

// Time-domain Green function in the frame where the lattice moves at -V,
// evaluated with poles regularized by eta and the frequency integral softly
// truncated by a Gaussian window exp(-(Omega/Omega_cut)^2) (the lattice part
// of the response reconstructs sharp wavefronts; the window smears them over
// a timescale ~1/Omega_cut).
Complex green_moving_frame(const LatticeSpec& spec, double xp, double x0p,
                           double tp, double t0p, const FrameBoost& boost,
                           double eta, double Omega_cut,
                           const Tolerance& tol = {});

// Extended-zone roots K_n of D(omega/gamma - V K, K) = 0, |K| <= Kmax.
std::vector<double> work_resonance_roots(const LatticeSpec& spec, double omega,
                                         const FrameBoost& boost, double Kmax,
                                         int bands = 14);

// Time-averaged work needed to drag X(t0') = cos(omega t0') through the
// lattice, as a sum over the resonance roots K_n:
//   <W> = (alpha omega^3 kappa^2 / 4 gamma a) *
//         sum_n s_n omega_n^2 / (D'_n (omega_n^2/c^2 - K_n^2)^2 c^2)
// where D'_n is the total K-derivative of D along omega_K = omega/gamma - VK
// and s_n = -sign(dD/domega / D'_n).
struct WorkRootTerm {
    double K = 0.0;
    double omega_K = 0.0;
    double contribution = 0.0;
};
struct WorkAverage {
    double value = 0.0;
    std::vector<WorkRootTerm> terms;
};
WorkAverage average_work(const LatticeSpec& spec, const OscillatorSpec& osc,
                         const FrameBoost& boost, double omega);

// Work W(omega, t') as a function of time, evaluated from the frequency-comb
// reduction of the double integral over the moving-frame Green function.  The
// regulator eta is stepped through eta_levels * omega and the result
// extrapolated linearly to eta -> 0.
struct WorkTrace {
    double omega = 0.0;
    double V = 0.0;
    std::vector<double> t;
    std::vector<double> W;
    std::vector<double> collision_times; // oscillator meets a scatterer
    double time_average = 0.0;           // window average, eta-extrapolated
    double extrapolation_spread = 0.0;   // max |C_extrap - C_finest| over terms
};
WorkTrace work_trace(const LatticeSpec& spec, const OscillatorSpec& osc,
                     const FrameBoost& boost, double omega,
                     const std::vector<double>& t_grid,
                     const std::vector<double>& eta_levels = {2e-2, 1e-2,
                                                             5e-3},
                     int comb_cutoff = 16);

} // namespace latticewave::classical
