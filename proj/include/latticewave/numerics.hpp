#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "latticewave/errors.hpp"

namespace latticewave::numerics {

using Complex = std::complex<double>;

struct Tolerance {
    double rel = 1e-10;
    double abs = 1e-12;
    int max_iter = 200;
};

struct TruncatedSum {
    Complex value;
    int terms_used = 0;
    double error_estimate = 0.0;
};

// Brent's method on a bracketing interval [lo, hi]; f(lo) and f(hi) must have
// opposite signs (or one of them may vanish).
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 const Tolerance& tol = {});

// Sample f on a uniform grid of n_samples points over [lo, hi] and polish every
// sign change with Brent.  Returns roots in ascending order.
std::vector<double> find_roots_scan(const std::function<double(double)>& f,
                                    double lo, double hi, int n_samples,
                                    const Tolerance& tol = {});

// Globally adaptive Gauss-Kronrod (G7/K15) quadrature for complex integrands.
Complex integrate(const std::function<Complex(double)>& f, double a, double b,
                  const Tolerance& tol = {});

// Same, but the interval is split at the given breakpoints first (useful when
// the integrand has kinks or near-poles at known locations).
Complex integrate(const std::function<Complex(double)>& f, double a, double b,
                  const std::vector<double>& breakpoints,
                  const Tolerance& tol = {});

// Sum of f(m) over m = 0, +-1, +-2, ... accumulated in symmetric shells until
// the last shell is below tolerance for three consecutive shells.
TruncatedSum sum_symmetric(const std::function<Complex(int)>& f,
                           const Tolerance& tol = {});

} // namespace latticewave::numerics
