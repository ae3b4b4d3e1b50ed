#include "latticewave/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace latticewave::classical {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

double fold_pi(double x) {
    double r = std::fmod(x + kPi, 2.0 * kPi);
    if (r < 0) r += 2.0 * kPi;
    return r - kPi;
}

// Dimensionless dispersion function D(w, Ka) with w = omega a/c, Ka = K a.
Complex D_dimless(double aoa, Complex w, Complex Ka) {
    return 1.0 - aoa * w * std::sin(w) / (2.0 * (std::cos(w) - std::cos(Ka)));
}

// Phased lattice sum S(Ka, xi) = sum_n e^{i Ka n} g0(xi - n), xi in units of
// a, g0(u) = e^{i k0 |u|}/(2 i k0); geometric closed form, valid for
// Im k0 > 0.  Obeys S(Ka, xi + 1) = e^{i Ka} S(Ka, xi).
Complex phased_lattice_sum(Complex k0, double Ka, double xi) {
    const double n = std::floor(xi);
    const double xb = xi - n; // [0, 1)
    const Complex up = std::exp(kI * (k0 - Ka));
    const Complex dn = std::exp(kI * (Ka + k0));
    const Complex val = (std::exp(kI * k0 * xb) / (1.0 - up) +
                         std::exp(-kI * k0 * xb) * dn / (1.0 - dn)) /
                        (2.0 * kI * k0);
    return val * std::exp(kI * (Ka * n));
}

// integral_0^T e^{i mu t} dt, stable for small mu.
Complex exp_integral(double mu, double T) {
    if (std::abs(mu) * T < 1e-9) return Complex(T, 0.5 * mu * T * T);
    return (std::exp(kI * (mu * T)) - 1.0) / (kI * mu);
}

// integral_0^T sin(w t) e^{i f t} dt.
Complex sin_exp_integral(double w, double f, double T) {
    return (exp_integral(f + w, T) - exp_integral(f - w, T)) / (2.0 * kI);
}

} // namespace

void OscillatorSpec::validate() const {
    if (!(omega0 > 0.0)) throw ConfigError("OscillatorSpec: omega0 must be > 0");
    if (!std::isfinite(kappa)) throw ConfigError("OscillatorSpec: kappa must be finite");
}

std::pair<Complex, Complex> macroscopic_wavenumbers(double omega,
                                                    const FrameBoost& boost,
                                                    double n, double eta) {
    const double c = boost.c, V = boost.V;
    if (std::abs(1.0 - n * V / c) < 1e-12 || std::abs(1.0 + n * V / c) < 1e-12)
        throw ThresholdSingular("macroscopic_wavenumbers: V at threshold c/n");
    const Complex wz = Complex(omega, eta) / c;
    const Complex kp = wz * (n - V / c) / (1.0 - n * V / c);
    const Complex km = wz * (-n - V / c) / (1.0 + n * V / c);
    return {kp, km};
}

double macroscopic_damping(double omega, const FrameBoost& boost, double n,
                           double kappa) {
    const auto [kp, km] = macroscopic_wavenumbers(omega, boost, n, 1e-12 * omega);
    const double sp = kp.real() > 0 ? 1.0 : -1.0;
    const double sm = km.real() > 0 ? 1.0 : -1.0;
    return boost.c * kappa * kappa / (4.0 * n) * (sp - sm);
}

std::vector<double> oscillator_trajectory(const OscillatorSpec& osc,
                                          double Gamma,
                                          const std::vector<double>& t_grid) {
    osc.validate();
    if (Gamma < 0.0) throw ConfigError("oscillator_trajectory: Gamma must be >= 0");
    std::vector<double> X;
    X.reserve(t_grid.size());
    const double w0 = osc.omega0;
    const double half = 0.5 * Gamma;
    for (double t : t_grid) {
        const double env = std::exp(-half * t);
        double x;
        if (half < w0) {
            const double wd = std::sqrt(w0 * w0 - half * half);
            x = env * (osc.X0 * std::cos(wd * t) +
                       (osc.Xdot0 + half * osc.X0) / wd * std::sin(wd * t));
        } else { // overdamped
            const double q = std::sqrt(half * half - w0 * w0);
            const double A = 0.5 * (osc.X0 + (osc.Xdot0 + half * osc.X0) / q);
            const double B = osc.X0 - A;
            x = env * (A * std::exp(q * t) + B * std::exp(-q * t));
        }
        X.push_back(x);
    }
    return X;
}

Complex lattice_D_closed(const LatticeSpec& spec, Complex omega, Complex K) {
    const Complex w = omega * spec.a / spec.c;
    const Complex Ka = K * spec.a;
    if (std::abs(std::cos(w) - std::cos(Ka)) < 1e-12)
        throw OnShellSingular("lattice_D: cos(k0 a) too close to cos(K a)");
    return D_dimless(spec.alpha / spec.a, w, Ka);
}

DualD lattice_D(const LatticeSpec& spec, Complex omega, Complex K,
                const Tolerance& tol) {
    spec.validate();
    DualD out;
    out.closed_form = lattice_D_closed(spec, omega, K);
    const Complex w = omega * spec.a / spec.c;
    const Complex Ka = K * spec.a;
    const double aoa = spec.alpha / spec.a;
    auto sum = numerics::sum_symmetric(
        [&](int m) {
            const Complex q = Ka + 2.0 * kPi * m;
            return aoa * w * w / (w * w - q * q);
        },
        tol);
    out.sum_form = 1.0 + sum.value;
    out.terms_used = sum.terms_used;
    out.discrepancy = std::abs(out.sum_form - out.closed_form);
    return out;
}

double lattice_dD_dK(const LatticeSpec& spec, double omega, double K) {
    const double w = omega * spec.a / spec.c;
    const double Ka = K * spec.a;
    const double d = std::cos(w) - std::cos(Ka);
    const double aoa = spec.alpha / spec.a;
    return spec.a * aoa * (0.5 * w * std::sin(w)) * std::sin(Ka) / (d * d);
}

double lattice_dD_domega(const LatticeSpec& spec, double omega, double K) {
    const double w = omega * spec.a / spec.c;
    const double Ka = K * spec.a;
    const double d = std::cos(w) - std::cos(Ka);
    const double aoa = spec.alpha / spec.a;
    const double sw = std::sin(w);
    return -(spec.a / spec.c) * 0.5 * aoa *
           ((sw + w * std::cos(w)) * d + w * sw * sw) / (d * d);
}

Complex green_fixed_frequency(const LatticeSpec& spec, double x, double x0,
                              Complex omega, const Tolerance& tol) {
    spec.validate();
    const Complex k0 = omega * spec.a / spec.c;
    if (!(k0.imag() > 0.0))
        throw ConfigError("green_fixed_frequency: Im(omega) must be > 0");
    const double aoa = spec.alpha / spec.a;
    const double xi = x / spec.a, xi0 = x0 / spec.a;

    std::vector<double> brk;
    // Pass-band pole locations of 1/D on the real K axis (for small Im omega).
    const double wr = k0.real();
    const double rhs = std::cos(wr) - 0.5 * aoa * wr * std::sin(wr);
    if (std::abs(rhs) <= 1.0) {
        const double Kr = std::acos(rhs);
        brk.push_back(Kr);
        brk.push_back(-Kr);
    }
    // Free-wave pole of the phased sums.
    const double kf = fold_pi(wr);
    brk.push_back(kf);
    brk.push_back(-kf);

    auto integrand = [&](double Ka) {
        const Complex s_d = phased_lattice_sum(k0, Ka, xi - xi0);
        const Complex s_x = phased_lattice_sum(k0, Ka, xi);
        const Complex s_0 = phased_lattice_sum(k0, Ka, -xi0);
        const Complex D = D_dimless(aoa, k0, Complex(Ka, 0.0));
        return s_d - aoa * k0 * k0 / D * s_x * s_0;
    };
    const Complex g = numerics::integrate(integrand, -kPi, kPi, brk, tol) /
                      (2.0 * kPi);
    return g * spec.a;
}

Complex green_moving_frame(const LatticeSpec& spec, double xp, double x0p,
                           double tp, double t0p, const FrameBoost& boost,
                           double eta, double Omega_cut, const Tolerance& tol) {
    spec.validate();
    const double g = boost.gamma, Vt = boost.V / boost.c;
    // Lattice units.
    const double dx = (xp - x0p) / spec.a;
    const double dt = (tp - t0p) * spec.c / spec.a;
    const double tau = g * (dt - Vt * dx);     // rest-frame time separation
    const double xid = g * (dx - Vt * dt);     // rest-frame spatial separation
    const double X = g * (xp / spec.a - Vt * tp * spec.c / spec.a);
    const double X0 = g * (x0p / spec.a - Vt * t0p * spec.c / spec.a);
    const double aoa = spec.alpha / spec.a;
    const double etad = eta * spec.a / spec.c;
    const double Wc = Omega_cut * spec.a / spec.c;

    // Free part: retarded d'Alembert propagator (Lorentz invariant).
    Complex result = (tau >= std::abs(xid)) ? Complex(-0.5, 0.0) : Complex(0.0, 0.0);

    // Lattice part: double spectral integral with a Gaussian frequency window.
    auto inner = [&](double W) {
        const Complex k0(W, etad);
        auto f = [&](double Ka) {
            const Complex D = D_dimless(aoa, k0, Complex(Ka, 0.0));
            return k0 * k0 / D * phased_lattice_sum(k0, Ka, X) *
                   phased_lattice_sum(k0, Ka, -X0);
        };
        return numerics::integrate(f, -kPi, kPi, tol) / (2.0 * kPi);
    };
    auto outer = [&](double W) {
        const double win = std::exp(-(W / Wc) * (W / Wc));
        return -aoa * win * std::exp(-kI * (W * tau)) * inner(W);
    };
    result += numerics::integrate(outer, -4.0 * Wc, 4.0 * Wc, tol) / (2.0 * kPi);
    return result * boost.c;
}

std::vector<double> work_resonance_roots(const LatticeSpec& spec, double omega,
                                         const FrameBoost& boost, double Kmax,
                                         int bands) {
    std::vector<double> all;
    const double c0 = omega / boost.gamma;
    for (int n = 1; n <= bands; ++n) {
        for (int sigma : {+1, -1}) {
            auto r = lattice::line_band_intersections(spec, c0, boost.V, sigma,
                                                      n, Kmax);
            all.insert(all.end(), r.begin(), r.end());
        }
    }
    std::sort(all.begin(), all.end());
    std::vector<double> out;
    for (double r : all) {
        if (!out.empty() && std::abs(r - out.back()) < 1e-9 / spec.a) continue;
        out.push_back(r);
    }
    return out;
}

WorkAverage average_work(const LatticeSpec& spec, const OscillatorSpec& osc,
                         const FrameBoost& boost, double omega) {
    spec.validate();
    osc.validate();
    if (!(omega > 0.0)) throw ConfigError("average_work: omega must be > 0");
    if (boost.V < 0.0) throw ConfigError("average_work: V must be >= 0");
    const double g = boost.gamma;
    const double wt = omega * spec.a / spec.c; // omega in lattice units
    const double Vt = boost.V / boost.c;
    const double aoa = spec.alpha / spec.a;
    const double scale = osc.kappa * osc.kappa * std::pow(spec.c, 3) /
                         (spec.a * spec.a);

    WorkAverage out;
    const double Kmax = (Vt > 0.0) ? (omega / g + 40.0 * spec.c / spec.a) /
                                         boost.V
                                   : 40.0 / spec.a;
    std::vector<double> roots =
        (spec.alpha > 0.0)
            ? work_resonance_roots(spec, omega, boost, Kmax)
            : std::vector<double>{};

    if (roots.empty()) {
        // Only the free-space pole contributes.
        out.value = scale * wt * wt / 4.0;
        return out;
    }
    double tot = 0.0;
    for (double K : roots) {
        const double wn = omega / g - boost.V * K;
        const double wnd = wn * spec.a / spec.c;
        const double Kd = K * spec.a;
        if (std::abs(wnd) < 1e-14) continue;
        // Dimensionless partial derivatives of D at (wn, K).
        const double d = std::cos(wnd) - std::cos(Kd);
        const double dK = aoa * (0.5 * wnd * std::sin(wnd)) * std::sin(Kd) /
                          (d * d);
        const double sw = std::sin(wnd);
        const double dw = -0.5 * aoa * ((sw + wnd * std::cos(wnd)) * d +
                                        wnd * sw * sw) /
                          (d * d);
        const double dtot = dK - Vt * dw; // total derivative along omega_K(K)
        if (std::abs(dtot) < 1e-10)
            throw DegenerateRoot("average_work: band-edge tangency at K a = " +
                                 std::to_string(Kd));
        const double sn = (dw / dtot) > 0 ? -1.0 : 1.0;
        const double den = (wnd * wnd - Kd * Kd);
        const double contrib = sn * wnd * wnd / (dtot * den * den);
        tot += contrib;
        out.terms.push_back(
            {K, wn, scale * aoa * std::pow(wt, 3) / (4.0 * g) * contrib});
    }
    out.value = scale * aoa * std::pow(wt, 3) / (4.0 * g) * tot;
    return out;
}

namespace {

// Comb coefficient C_{s,j}(eta): one regularized K integral (lattice units).
Complex comb_coefficient(const LatticeSpec& spec, double wt, double Vt,
                         double gamma, int s, int j, double eta, double Kmax,
                         const std::vector<double>& d_roots) {
    const double aoa = spec.alpha / spec.a;
    const double Qj = 2.0 * kPi * j;
    const double q = -s * wt / gamma;

    std::vector<double> brk(d_roots);
    // Free-wave poles k0 = +-K and k0 = +-(K + Qj).
    for (int sgn : {+1, -1}) {
        brk.push_back((q - sgn * 0.0) / (sgn + Vt));
        brk.push_back((q - sgn * Qj) / (sgn + Vt));
    }
    // Shoulders of the macroscopic region around K = 0.
    const double shoulder = std::max(0.03, 40.0 * wt);
    brk.push_back(shoulder);
    brk.push_back(-shoulder);

    auto integrand = [&](double K) {
        const Complex k0(q - Vt * K, eta);
        const Complex k2 = k0 * k0;
        const Complex D = D_dimless(aoa, k0, Complex(K, 0.0));
        const Complex pj = k2 - (K + Qj) * (K + Qj);
        const Complex p0 = k2 - K * K;
        return -aoa * k2 / (D * pj * p0);
    };
    // The j = 0 coefficient is O(1/omega) with near-pole panels whose
    // round-off floor sits around rel 2e-9; ask for a little less than that.
    // Absolute errors at this level are negligible in the window average.
    Complex val = numerics::integrate(integrand, -Kmax, Kmax, brk,
                                      {3e-8, 1e-10, 400}) /
                  (2.0 * kPi);
    if (j == 0) {
        const Complex p(q, eta);
        val += -kI / (2.0 * p); // analytic free-space K integral
    }
    return val;
}

} // namespace

WorkTrace work_trace(const LatticeSpec& spec, const OscillatorSpec& osc,
                     const FrameBoost& boost, double omega,
                     const std::vector<double>& t_grid,
                     const std::vector<double>& eta_levels, int comb_cutoff) {
    spec.validate();
    osc.validate();
    if (!(omega > 0.0)) throw ConfigError("work_trace: omega must be > 0");
    if (osc.x0 != 0.0)
        throw ConfigError("work_trace: supported for x0 = 0 only");
    if (eta_levels.size() < 2)
        throw ConfigError("work_trace: need at least two eta levels");
    const double g = boost.gamma;
    const double wt = omega * spec.a / spec.c;
    const double Vt = boost.V / boost.c;
    const double aoa = spec.alpha / spec.a;
    const int J = comb_cutoff;

    const double Kmax =
        (Vt > 0.02) ? (wt / g + 60.0) / Vt
                    : std::min((wt / g + 60.0) / std::max(Vt, 1e-3), 5000.0);

    // Extended-zone roots of D along the line k0(K) = -s wt/g - V K, per s.
    const int bands = std::max(
        2, static_cast<int>(std::ceil((wt / g + Vt * Kmax) / kPi)) + 2);
    std::vector<std::vector<double>> droots(2);
    for (int si = 0; si < 2; ++si) {
        const int s = si == 0 ? +1 : -1;
        if (aoa == 0.0) continue;
        LatticeSpec unit{aoa, 1.0, 1.0};
        for (int n = 1; n <= bands; ++n)
            for (int sigma : {+1, -1}) {
                auto r = lattice::line_band_intersections(
                    unit, -s * wt / g, Vt, sigma, n, Kmax);
                droots[si].insert(droots[si].end(), r.begin(), r.end());
            }
        std::sort(droots[si].begin(), droots[si].end());
    }

    // Comb coefficients at each eta level, then linear eta -> 0 extrapolation
    // from the two finest levels.
    const size_t L = eta_levels.size();
    struct Term {
        int s;
        int j;
        double freq;
        Complex C;
    };
    std::vector<Term> terms;
    std::vector<std::vector<Complex>> Cs(L);
    for (int si = 0; si < 2; ++si) {
        const int s = si == 0 ? +1 : -1;
        for (int j = -J; j <= J; ++j) {
            Term t;
            t.s = s;
            t.j = j;
            t.freq = s * wt - 2.0 * kPi * j * g * Vt;
            terms.push_back(t);
            for (size_t l = 0; l < L; ++l)
                Cs[l].push_back(comb_coefficient(spec, wt, Vt, g, s, j,
                                                 eta_levels[l] * wt, Kmax,
                                                 droots[si]));
        }
    }
    const double e1 = eta_levels[L - 2], e2 = eta_levels[L - 1];
    double spread = 0.0;
    for (size_t i = 0; i < terms.size(); ++i) {
        const Complex extrap =
            Cs[L - 1][i] + (Cs[L - 1][i] - Cs[L - 2][i]) * e2 / (e1 - e2);
        spread = std::max(spread, std::abs(extrap - Cs[L - 1][i]));
        terms[i].C = extrap;
    }

    WorkTrace out;
    out.omega = omega;
    out.V = boost.V;
    out.extrapolation_spread = spread;
    const double scale = osc.kappa * osc.kappa * std::pow(spec.c, 3) /
                         (spec.a * spec.a);

    out.t = t_grid;
    out.W.reserve(t_grid.size());
    for (double t : t_grid) {
        const double td = t * spec.c / spec.a;
        Complex acc = 0.0;
        for (const auto& tm : terms)
            acc += (tm.s * tm.freq / (2.0 * g)) * std::exp(kI * (tm.freq * td)) *
                   tm.C;
        out.W.push_back(scale * std::real(-std::sin(wt * td) * wt * wt * acc));
    }

    // Window average over an integer number of half periods covering at least
    // 200 collision periods (and >= 20 full periods of the drive).
    double Tw = 40.0 * kPi / wt;
    if (Vt > 0.0) Tw = std::max(Tw, 200.0 / (g * Vt));
    const double halfp = kPi / wt;
    Tw = std::ceil(Tw / halfp) * halfp;
    Complex acc = 0.0;
    for (const auto& tm : terms)
        acc += (tm.s * tm.freq / (2.0 * g)) * tm.C *
               sin_exp_integral(wt, tm.freq, Tw);
    out.time_average = scale * std::real(-wt * wt * acc) / Tw;

    if (Vt > 0.0 && !t_grid.empty()) {
        const double tcol = spec.a / (g * boost.V);
        double t0 = std::ceil(t_grid.front() / tcol) * tcol;
        for (double tc = t0; tc <= t_grid.back(); tc += tcol)
            out.collision_times.push_back(tc);
    }
    return out;
}

} // namespace latticewave::classical
