#include "latticewave/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace latticewave::lattice {

namespace {

constexpr double kPi = std::numbers::pi;

// Fold Ka into (-pi, pi].
double fold(double Ka) {
    double r = std::fmod(Ka + kPi, 2.0 * kPi);
    if (r < 0) r += 2.0 * kPi;
    return r - kPi;
}

// rhs of cos(Ka) = f(ka) in lattice units (ka dimensionless).
double rhs(double alpha_over_a, double ka) {
    return std::cos(ka) - 0.5 * alpha_over_a * ka * std::sin(ka);
}

// Dimensionless band frequency ka for |Kfa| <= pi (band >= 1).
double band_ka(double alpha_over_a, int band, double Kfa,
               const Tolerance& tol) {
    const double target = std::cos(Kfa);
    const double lo0 = (band - 1) * kPi;
    const double hi0 = band * kPi;
    auto f = [&](double ka) { return rhs(alpha_over_a, ka) - target; };
    const double lo = lo0 + 1e-13;
    const double hi = hi0 - 1e-13;
    const double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0)) {
        // Root pinned at an interval endpoint (band edge with |cos Kfa| = 1).
        if (std::abs(f(lo0)) < 1e-12) return lo0;
        if (std::abs(f(hi0)) < 1e-12) return hi0;
        throw BandNotFound("band_frequency: no root in band interval " +
                           std::to_string(band));
    }
    return numerics::find_root(f, lo, hi, tol);
}

} // namespace

void LatticeSpec::validate() const {
    if (!(alpha >= 0.0)) throw ConfigError("LatticeSpec: alpha must be >= 0");
    if (!(a > 0.0)) throw ConfigError("LatticeSpec: a must be > 0");
    if (!(c > 0.0)) throw ConfigError("LatticeSpec: c must be > 0");
}

double LatticeSpec::index() const { return std::sqrt(1.0 + alpha / a); }

double dispersion_rhs(const LatticeSpec& spec, double ka) {
    return rhs(spec.alpha / spec.a, ka);
}

Complex bloch_vector(const LatticeSpec& spec, double omega) {
    spec.validate();
    const double w = omega * spec.a / spec.c;
    const double z = rhs(spec.alpha / spec.a, w);
    Complex Ka;
    if (std::abs(z) <= 1.0) {
        Ka = std::acos(z);
    } else {
        Ka = std::acos(Complex(z, 0.0));
        if (Ka.imag() < 0.0) Ka = std::conj(Ka);
    }
    return Ka / spec.a;
}

double band_frequency(const LatticeSpec& spec, int band, double K,
                      const Tolerance& tol) {
    if (band < 1) throw ConfigError("band_frequency: band must be >= 1");
    const double Kfa = std::abs(fold(K * spec.a));
    return band_ka(spec.alpha / spec.a, band, Kfa, tol) * spec.c / spec.a;
}

Complex normalization(const LatticeSpec& spec, int band, double K) {
    const double k = band_frequency(spec, band, K) / spec.c;
    const double w = k * spec.a;            // k a
    const double aoa = spec.alpha / spec.a; // alpha / a
    const double s = std::sin(w);
    const double bracket = (1.0 + 0.5 * aoa) * s + 0.5 * aoa * w * std::cos(w);
    if (std::abs(s) < 1e-6 || std::abs(bracket) < 1e-6)
        throw EdgeSingular("normalization: mode too close to a band edge (sin(ka)=" +
                           std::to_string(s) + ")");
    return std::pow(Complex(s, 0.0), -0.5) * std::pow(Complex(bracket, 0.0), -0.5);
}

BlochMode make_mode(const LatticeSpec& spec, int band, double K,
                    const Tolerance& tol) {
    spec.validate();
    BlochMode m;
    m.spec = spec;
    m.band = band;
    m.K = fold(K * spec.a) / spec.a;
    m.omega = band_frequency(spec, band, m.K, tol);
    m.k = m.omega / spec.c;
    m.N = normalization(spec, band, m.K);
    return m;
}

Complex mode_field(const BlochMode& mode, double x) {
    const double a = mode.spec.a;
    const double xi = x / a;
    const double cell = std::floor(xi + 0.5);
    const double xc = (xi - cell) * a; // in [-a/2, a/2)
    const double w = mode.k * a, Ka = mode.K * a;
    const Complex I(0.0, 1.0);
    const double sp = std::sin(0.5 * (w + Ka));
    const double sm = std::sin(0.5 * (w - Ka));
    Complex val;
    if (xc < 0.0) {
        val = std::exp(-I * (0.5 * Ka)) *
              (sp * std::exp(I * (mode.k * (xc + 0.5 * a))) +
               sm * std::exp(-I * (mode.k * (xc + 0.5 * a))));
    } else {
        val = std::exp(I * (0.5 * Ka)) *
              (sp * std::exp(I * (mode.k * (xc - 0.5 * a))) +
               sm * std::exp(-I * (mode.k * (xc - 0.5 * a))));
    }
    return mode.N * std::exp(I * (Ka * cell)) * val;
}

Complex mode_field_deriv(const BlochMode& mode, double x) {
    const double a = mode.spec.a;
    const double xi = x / a;
    const double cell = std::floor(xi + 0.5);
    const double xc = (xi - cell) * a;
    const double w = mode.k * a, Ka = mode.K * a;
    const Complex I(0.0, 1.0);
    const double sp = std::sin(0.5 * (w + Ka));
    const double sm = std::sin(0.5 * (w - Ka));
    Complex val;
    if (xc < 0.0) {
        val = std::exp(-I * (0.5 * Ka)) * (I * mode.k) *
              (sp * std::exp(I * (mode.k * (xc + 0.5 * a))) -
               sm * std::exp(-I * (mode.k * (xc + 0.5 * a))));
    } else {
        val = std::exp(I * (0.5 * Ka)) * (I * mode.k) *
              (sp * std::exp(I * (mode.k * (xc - 0.5 * a))) -
               sm * std::exp(-I * (mode.k * (xc - 0.5 * a))));
    }
    return mode.N * std::exp(I * (Ka * cell)) * val;
}

Complex periodic_part(const BlochMode& mode, double x) {
    const Complex I(0.0, 1.0);
    return mode_field(mode, x) * std::exp(-I * (mode.K * x));
}

double power_flow(const BlochMode& mode) {
    return 0.5 / mode.spec.a * mode.k * mode.k * energy_velocity(mode);
}

double power_flow_direct(const BlochMode& mode, double x) {
    return 0.5 * mode.omega *
           std::imag(std::conj(mode_field(mode, x)) * mode_field_deriv(mode, x));
}

double energy_density(const BlochMode& mode, double x) {
    const Complex dphi = mode_field_deriv(mode, x);
    const Complex phi = mode_field(mode, x);
    return 0.25 * (std::norm(dphi) + mode.k * mode.k * std::norm(phi));
}

double site_energy_weight(const BlochMode& mode, int n) {
    const Complex phi = mode_field(mode, n * mode.spec.a);
    return 0.25 * mode.k * mode.k * mode.spec.alpha * std::norm(phi);
}

double cell_energy(const BlochMode& mode) {
    const double a = mode.spec.a;
    const Complex smooth = numerics::integrate(
        [&](double x) { return Complex(energy_density(mode, x), 0.0); },
        -0.5 * a, 0.5 * a, {0.0}, {1e-11, 1e-13, 200});
    return (smooth.real() + site_energy_weight(mode, 0)) / a;
}

double energy_velocity(const BlochMode& mode) {
    const double w = mode.k * mode.spec.a;
    const double Ka = mode.K * mode.spec.a;
    const double aoa = mode.spec.alpha / mode.spec.a;
    const double sw = std::sin(w), cw = std::cos(w);
    return mode.spec.c * sw * std::sin(Ka) /
           (1.0 - cw * std::cos(Ka) + 0.5 * aoa * sw * sw);
}

Complex spatial_average(const BlochMode& mode, double x, const Tolerance& tol) {
    const double a = mode.spec.a;
    // Break at scatterer sites inside the window, where phi has a kink.
    std::vector<double> brk;
    const double lo = x - 0.5 * a, hi = x + 0.5 * a;
    for (double s = std::ceil(lo / a) * a; s < hi; s += a) brk.push_back(s);
    const Complex integral = numerics::integrate(
        [&](double y) { return mode_field(mode, y); }, lo, hi, brk, tol);
    return integral / a;
}

Complex completeness_check(const LatticeSpec& spec, double x, double xp,
                           int band_cutoff, int K_samples) {
    spec.validate();
    if (K_samples < 1) K_samples = 1;
    // 8-point Gauss-Legendre nodes on (0,1): no endpoint evaluation, so the
    // band-edge normalization singularities are never hit.
    static const double gt[4] = {0.1834346424956498, 0.5255324099163290,
                                 0.7966664774136267, 0.9602898564975363};
    static const double gv[4] = {0.3626837833783620, 0.3137066458778873,
                                 0.2223810344533745, 0.1012285362903763};
    double gx[8], gw[8];
    for (int i = 0; i < 4; ++i) {
        gx[i] = 0.5 * (1.0 - gt[3 - i]);
        gx[7 - i] = 0.5 * (1.0 + gt[3 - i]);
        gw[i] = gw[7 - i] = 0.5 * gv[3 - i];
    }
    const Complex I(0.0, 1.0);
    const double Kedge = kPi / spec.a;
    Complex total = 0.0;
    for (int p = 0; p < K_samples; ++p) {
        const double KA = -Kedge + 2.0 * Kedge * p / K_samples;
        const double KB = -Kedge + 2.0 * Kedge * (p + 1) / K_samples;
        for (int g = 0; g < 8; ++g) {
            const double K = KA + (KB - KA) * gx[g];
            Complex s = 0.0;
            for (int n = 1; n <= band_cutoff; ++n) {
                try {
                    BlochMode m = make_mode(spec, n, K);
                    s += periodic_part(m, x) * std::conj(periodic_part(m, xp));
                } catch (const EdgeSingular&) {
                    // A quadrature node grazing a band edge; its weight in
                    // the K integral is negligible.
                }
            }
            total += gw[g] * (KB - KA) * std::exp(I * (K * (x - xp))) * s;
        }
    }
    return total / (2.0 * kPi);
}

std::vector<double> line_band_intersections(const LatticeSpec& spec, double c0,
                                            double V, int sigma, int band,
                                            double Kmax) {
    spec.validate();
    auto h = [&](double K) {
        return c0 - V * K - sigma * band_frequency(spec, band, K);
    };
    const double cellw = 2.0 * kPi / spec.a;
    const int lmin = static_cast<int>(std::floor(-Kmax / cellw)) - 1;
    const int lmax = static_cast<int>(std::ceil(Kmax / cellw)) + 1;
    constexpr int NS = 32;
    std::vector<double> roots;
    for (int l = lmin; l <= lmax; ++l) {
        const double center = l * cellw;
        for (int half = 0; half < 2; ++half) {
            const double A = center + (half == 0 ? -0.5 * cellw : 0.0);
            const double B = center + (half == 0 ? 0.0 : 0.5 * cellw);
            double xprev = A, fprev = h(A);
            for (int i = 1; i <= NS; ++i) {
                const double xcur = A + (B - A) * i / NS;
                const double fcur = h(xcur);
                if (fprev == 0.0) {
                    roots.push_back(xprev);
                } else if ((fprev > 0) != (fcur > 0)) {
                    roots.push_back(
                        numerics::find_root(h, xprev, xcur, {1e-14, 1e-14, 200}));
                }
                xprev = xcur;
                fprev = fcur;
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double r : roots) {
        if (std::abs(r) > Kmax) continue;
        if (!out.empty() && std::abs(r - out.back()) < 1e-9) continue;
        out.push_back(r);
    }
    return out;
}

} // namespace latticewave::lattice
