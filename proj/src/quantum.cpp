#include "latticewave/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace latticewave::quantum {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

double fold_pi(double x) {
    double r = std::fmod(x + kPi, 2.0 * kPi);
    if (r < 0) r += 2.0 * kPi;
    return r - kPi;
}

// integral_{x1}^{x2} e^{i mu x} dx, stable for small mu.
Complex seg_integral(double mu, double x1, double x2) {
    const double h = 0.5 * (x2 - x1);
    const double m = 0.5 * (x1 + x2);
    const double z = mu * h;
    double sinc;
    if (std::abs(z) < 1e-6) {
        sinc = 1.0 - z * z / 6.0;
    } else {
        sinc = std::sin(z) / z;
    }
    return (x2 - x1) * std::exp(kI * (mu * m)) * sinc;
}

} // namespace

Complex fourier_coefficient_u(const BlochMode& mode, int m) {
    const double a = mode.spec.a;
    if (mode.spec.alpha == 0.0) return m == 0 ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
    const double k2 = mode.k * mode.k;
    const double q = mode.K + 2.0 * kPi * m / a;
    const double den = q * q - k2;
    if (std::abs(den) < 1e-12 * k2)
        throw OnShellSingular("fourier_coefficient_u: K + 2 pi m/a on the light line");
    const double w = mode.k * a;
    return (mode.spec.alpha / a) * mode.N * std::sin(w) * k2 / den;
}

std::vector<ResonanceRoot> resonance_roots(const LatticeSpec& spec,
                                           double omega0,
                                           const FrameBoost& boost, int bands) {
    spec.validate();
    if (!(omega0 > 0.0)) throw ConfigError("resonance_roots: omega0 must be > 0");
    std::vector<ResonanceRoot> out;
    if (!(boost.V > 0.0)) return out; // omega0/gamma + omega > 0 has no root
    const double g = boost.gamma;
    const double Kmax = omega0 / (g * boost.V) + 12.0 * kPi / spec.a;
    const double grazing_tol = 1e-9;
    for (int n = 1; n <= bands; ++n) {
        auto Ks = lattice::line_band_intersections(spec, omega0 / g, boost.V,
                                                   -1, n, Kmax);
        int ordinal = 0;
        for (double K : Ks) {
            ResonanceRoot r;
            r.band = n;
            r.m = ordinal++;
            r.K = K;
            const double omega = lattice::band_frequency(spec, n, K);
            r.k = omega / spec.c;
            // energy_velocity needs only (k, K); skip the normalization so
            // roots that graze a band edge are still representable.
            lattice::BlochMode mode;
            mode.spec = spec;
            mode.band = n;
            mode.K = K;
            mode.omega = omega;
            mode.k = r.k;
            mode.N = 1.0;
            r.vg = lattice::energy_velocity(mode);
            const double slip = 1.0 - boost.V / r.vg;
            r.grazing = std::abs(slip) < grazing_tol;
            const double w = r.k * spec.a;
            const double Kd = K * spec.a;
            const double Kf = fold_pi(Kd);
            const double den = Kd * Kd - w * w;
            if (!r.grazing)
                r.weight = std::abs(std::sin(w) / std::sin(Kf)) * w * w * w /
                           (std::abs(slip) * den * den);
            out.push_back(r);
        }
    }
    return out;
}

AbsorptionRate absorption_rate(const LatticeSpec& spec,
                               const OscillatorSpec& osc,
                               const FrameBoost& boost, int bands) {
    osc.validate();
    AbsorptionRate out;
    out.roots = resonance_roots(spec, osc.omega0, boost, bands);
    const double aoa = spec.alpha / spec.a;
    const double g = boost.gamma;
    double sum = 0.0;
    for (const auto& r : out.roots) {
        if (r.grazing) {
            out.warnings.push_back(
                "grazing resonance excluded: band " + std::to_string(r.band) +
                ", K a = " + std::to_string(r.K * spec.a));
            continue;
        }
        sum += r.weight;
    }
    out.rate =
        osc.kappa * osc.kappa * osc.omega0 / (4.0 * g * g) * aoa * aoa * sum;
    out.rate_oscillator_frame = g * out.rate;
    return out;
}

double macroscopic_rate(const OscillatorSpec& osc, const FrameBoost& boost,
                        double n) {
    if (!(n >= 1.0)) throw ConfigError("macroscopic_rate: n must be >= 1");
    if (boost.V * n / boost.c <= 1.0) return 0.0;
    return boost.c * osc.kappa * osc.kappa / (4.0 * n * boost.gamma);
}

TransitionAmplitude transition_amplitude(const LatticeSpec& spec,
                                         const OscillatorSpec& osc,
                                         const FrameBoost& boost,
                                         const BlochMode& mode, long N_cells) {
    spec.validate();
    osc.validate();
    if (!(boost.V > 0.0))
        throw ConfigError("transition_amplitude: V must be > 0");
    if (N_cells < 1 || N_cells % 2 == 0)
        throw ConfigError("transition_amplitude: N_cells must be odd and >= 1");

    // Lattice units: lengths in a, times in a/c.
    const double g = boost.gamma;
    const double Vt = boost.V / boost.c;
    const double wt = mode.omega * spec.a / spec.c;
    const double wt0 = osc.omega0 * spec.a / spec.c;
    const double w = mode.k * spec.a;
    const double Kd = mode.K * spec.a;
    const double chi = wt0 / g + wt - Vt * Kd;
    const double beta = chi / Vt;
    const double T = N_cells / Vt;

    // Dirichlet kernel of the N-cell comb, with the removable-singularity
    // limit at sin(beta/2) = 0.
    const double sh = std::sin(0.5 * beta);
    double dirich;
    if (std::abs(sh) < 1e-9) {
        dirich = (N_cells + 1.0) * std::cos(0.5 * beta * (N_cells + 1)) /
                 std::cos(0.5 * beta);
    } else {
        dirich = std::sin(0.5 * beta * (N_cells + 1)) / sh;
    }

    // One-cell integral (1/V) int_{-1/2}^{1/2} u*(x) e^{i beta x} dx in
    // closed form from the piecewise free-wave structure of the mode.
    const Complex Ns = std::conj(mode.N);
    const double sp = std::sin(0.5 * (w + Kd));
    const double sm = std::sin(0.5 * (w - Kd));
    const double q = Kd + beta;
    const Complex left =
        std::exp(kI * (0.5 * Kd)) *
        (sp * std::exp(-kI * (0.5 * w)) * seg_integral(q - w, -0.5, 0.0) +
         sm * std::exp(kI * (0.5 * w)) * seg_integral(q + w, -0.5, 0.0));
    const Complex right =
        std::exp(-kI * (0.5 * Kd)) *
        (sp * std::exp(kI * (0.5 * w)) * seg_integral(q - w, 0.0, 0.5) +
         sm * std::exp(-kI * (0.5 * w)) * seg_integral(q + w, 0.0, 0.5));
    const Complex cell_int = Ns * (left + right) / Vt;

    // u*(V T / 2) = u*(a/2) by periodicity (N_cells odd).
    const Complex u_half = std::conj(lattice::periodic_part(mode, 0.5 * spec.a));

    const Complex bracket = (wt0 / (2.0 * g)) * std::exp(-kI * (0.5 * beta)) *
                                dirich * cell_int -
                            u_half * std::sin(0.5 * chi * T);
    TransitionAmplitude out;
    out.band = mode.band;
    out.K = mode.K;
    out.T = T * spec.a / spec.c;
    out.zeta = kI * osc.kappa * std::sqrt(1.0 / (wt0 * wt)) * bracket;
    return out;
}

double finite_time_rate(const LatticeSpec& spec, const OscillatorSpec& osc,
                        const FrameBoost& boost, long N_cells, int bands) {
    spec.validate();
    osc.validate();
    if (!(boost.V > 0.0)) throw ConfigError("finite_time_rate: V must be > 0");
    const double T = N_cells * spec.a / boost.V;

    // Folded resonance roots, used as quadrature breakpoints in each band.
    std::vector<double> brk;
    for (const auto& r : resonance_roots(spec, osc.omega0, boost, bands))
        brk.push_back(fold_pi(r.K * spec.a));

    const double eps = 2e-3; // keep clear of band-edge singular normalization
    // The Dirichlet kernel oscillates ~N_cells times per band, so the split
    // budget has to grow with the observation window.
    const int max_iter =
        static_cast<int>(std::min<long>(200 + N_cells, 20000));
    const numerics::Tolerance tol{1e-5, 1e-12, max_iter};
    double total = 0.0;
    for (int n = 1; n <= bands; ++n) {
        auto f = [&](double Kd) -> Complex {
            try {
                lattice::BlochMode m = lattice::make_mode(spec, n, Kd / spec.a);
                const auto amp = transition_amplitude(spec, osc, boost, m,
                                                      N_cells);
                return Complex(std::norm(amp.zeta), 0.0);
            } catch (const EdgeSingular&) {
                return Complex(0.0, 0.0);
            }
        };
        for (int side = 0; side < 2; ++side) {
            const double lo = side == 0 ? eps : -kPi + eps;
            const double hi = side == 0 ? kPi - eps : -eps;
            total += numerics::integrate(f, lo, hi, brk, tol).real();
        }
    }
    // dK = dKd / a; probability per unit time.
    return total / (2.0 * kPi * spec.a) / T;
}

} // namespace latticewave::quantum
