#pragma once

#include <complex>
#include <vector>

#include "latticewave/errors.hpp"
#include "latticewave/numerics.hpp"

namespace latticewave::lattice {

using numerics::Complex;
using numerics::Tolerance;

// A 1D comb of identical point scatterers of strength alpha (dimension of
// length), spaced a apart, in a background with wave speed c.  The field obeys
//   phi'' + (omega/c)^2 [1 + alpha * sum_n delta(x - n a)] phi = 0.
struct LatticeSpec {
    double alpha = 1.0;
    double a = 1.0;
    double c = 1.0;
    void validate() const;
    // Refractive index of the homogenized medium, n = sqrt(1 + alpha/a).
    double index() const;
};

// A Bloch eigenmode phi_{band,K}(x) e^{-i omega t} of the comb, K restricted
// to the first Brillouin zone (pass bands only, K real).
struct BlochMode {
    LatticeSpec spec;
    int band = 1;          // 1-based
    double K = 0.0;        // Bloch wavevector, |K| <= pi/a
    double omega = 0.0;    // eigenfrequency
    double k = 0.0;        // background wavenumber, k = omega/c
    Complex N = 0.0;       // normalization constant
};

// Right-hand side of the dispersion relation: cos(Ka) as a function of ka.
double dispersion_rhs(const LatticeSpec& spec, double ka);

// Bloch wavevector at a given frequency (band chosen by frequency).  Real
// inside pass bands; complex with Im K > 0 inside gaps (evanescent).
Complex bloch_vector(const LatticeSpec& spec, double omega);

// Eigenfrequency of the given band at Bloch vector K (uses |K| folded to the
// first zone).  Bands are indexed from 1; band n has k a in [(n-1)pi, n pi].
double band_frequency(const LatticeSpec& spec, int band, double K,
                      const Tolerance& tol = {});

// Normalization constant (complex in general; the phase is a fixed principal-
// branch choice).  Throws EdgeSingular within 1e-6 of a band edge where it
// diverges.
Complex normalization(const LatticeSpec& spec, int band, double K);

// Assemble a normalized mode.  Throws EdgeSingular near band edges.
BlochMode make_mode(const LatticeSpec& spec, int band, double K,
                    const Tolerance& tol = {});

// Field value and spatial derivative of the Bloch mode at arbitrary x (the
// piecewise free-wave solution in the central cell, Bloch-extended).
Complex mode_field(const BlochMode& mode, double x);
Complex mode_field_deriv(const BlochMode& mode, double x);

// Periodic part u(x) = phi(x) e^{-iKx} (period a).
Complex periodic_part(const BlochMode& mode, double x);

// Cell- and time-averaged power flow <S> = (1/2a) (omega/c)^2 v_E, and the
// pointwise time-averaged flux (c^2/2) Im[phi* phi'] / ... evaluated directly.
double power_flow(const BlochMode& mode);
double power_flow_direct(const BlochMode& mode, double x);

// Time-averaged energy density: smooth part at x; the delta-function part of
// rho(x) is reported separately as a lumped weight per scatterer site.
double energy_density(const BlochMode& mode, double x);
double site_energy_weight(const BlochMode& mode, int n);

// Cell-averaged energy density (smooth part integrated plus one site weight,
// divided by a).
double cell_energy(const BlochMode& mode);

// Energy transport velocity v_E = <S> / <U> (closed form).
double energy_velocity(const BlochMode& mode);

// Average of phi over a window of one period centered at x.
Complex spatial_average(const BlochMode& mode, double x,
                        const Tolerance& tol = {});

// Numerical check of the completeness relation: integrates
// sum_band u_band(x) u_band(x')* e^{iK(x-x')} over the first zone using
// K_samples panels per band.  Should approach delta(x-x') behaviour: ~0 for
// x != x' off-site as band_cutoff grows.
Complex completeness_check(const LatticeSpec& spec, double x, double xp,
                           int band_cutoff, int K_samples);

// Roots K (extended zone, |K| <= Kmax) of  c0 - V K = sigma * omega_band(K),
// where omega_band is the folded band-frequency of the given band.  Used for
// resonance conditions of an oscillator dragged through the lattice.
std::vector<double> line_band_intersections(const LatticeSpec& spec, double c0,
                                            double V, int sigma, int band,
                                            double Kmax);

} // namespace latticewave::lattice
