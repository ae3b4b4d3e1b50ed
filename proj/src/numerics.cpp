#include "latticewave/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace latticewave::numerics {

namespace {

// 15-point Kronrod nodes/weights on [-1,1] with the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Panel {
    double a, b;
    Complex value;
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel eval_panel(const std::function<Complex(double)>& f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    Complex fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    Complex gk = 0.0, g = 0.0;
    for (int i = 0; i < 7; ++i) gk += kWgk[i] * (fv[i] + fv[14 - i]);
    gk += kWgk[7] * fv[7];
    for (int i = 0; i < 3; ++i) g += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    g += kWg[3] * fv[7];
    Panel p;
    p.a = a;
    p.b = b;
    p.value = h * gk;
    p.err = std::abs(h * (gk - g));
    return p;
}

} // namespace

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 const Tolerance& tol) {
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0) == (fb > 0))
        throw NoBracket("find_root: f has the same sign at both endpoints");
    if (std::abs(fa) < std::abs(fb)) {
        std::swap(a, b);
        std::swap(fa, fb);
    }
    double c = a, fc = fa, s = b, fs = fb, d = 0.0;
    bool mflag = true;
    for (int it = 0; it < tol.max_iter; ++it) {
        const double xtol = tol.abs + tol.rel * std::abs(b);
        if (fb == 0.0 || std::abs(a - b) < xtol) return b;
        if (fa != fc && fb != fc) {
            s = a * fb * fc / ((fa - fb) * (fa - fc)) +
                b * fa * fc / ((fb - fa) * (fb - fc)) +
                c * fa * fb / ((fc - fa) * (fc - fb));
        } else {
            s = b - fb * (b - a) / (fb - fa);
        }
        const double m = 0.5 * (a + b);
        const bool bad = !((s > std::min(m, b) && s < std::max(m, b))) ||
                         (mflag && std::abs(s - b) >= 0.5 * std::abs(b - c)) ||
                         (!mflag && std::abs(s - b) >= 0.5 * std::abs(c - d)) ||
                         (mflag && std::abs(b - c) < xtol) ||
                         (!mflag && std::abs(c - d) < xtol);
        if (bad) {
            s = m;
            mflag = true;
        } else {
            mflag = false;
        }
        fs = f(s);
        d = c;
        c = b;
        fc = fb;
        if ((fa > 0) != (fs > 0)) {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if (std::abs(fa) < std::abs(fb)) {
            std::swap(a, b);
            std::swap(fa, fb);
        }
    }
    throw NoConvergence("find_root: Brent iteration limit reached");
}

std::vector<double> find_roots_scan(const std::function<double(double)>& f,
                                    double lo, double hi, int n_samples,
                                    const Tolerance& tol) {
    std::vector<double> roots;
    if (n_samples < 2) n_samples = 2;
    std::vector<double> xs(n_samples), fs(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        xs[i] = lo + (hi - lo) * i / (n_samples - 1);
        fs[i] = f(xs[i]);
    }
    for (int i = 0; i + 1 < n_samples; ++i) {
        if (fs[i] == 0.0) {
            roots.push_back(xs[i]);
        } else if ((fs[i] > 0) != (fs[i + 1] > 0)) {
            roots.push_back(find_root(f, xs[i], xs[i + 1], tol));
        }
    }
    if (!fs.empty() && fs.back() == 0.0) roots.push_back(xs.back());
    std::sort(roots.begin(), roots.end());
    return roots;
}

Complex integrate(const std::function<Complex(double)>& f, double a, double b,
                  const Tolerance& tol) {
    return integrate(f, a, b, {}, tol);
}

Complex integrate(const std::function<Complex(double)>& f, double a, double b,
                  const std::vector<double>& breakpoints,
                  const Tolerance& tol) {
    if (a == b) return 0.0;
    double sgn = 1.0;
    if (b < a) {
        std::swap(a, b);
        sgn = -1.0;
    }
    std::vector<double> pts{a};
    for (double x : breakpoints)
        if (x > a && x < b) pts.push_back(x);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::priority_queue<Panel> heap;
    Complex total = 0.0;
    double toterr = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        Panel p = eval_panel(f, pts[i], pts[i + 1]);
        total += p.value;
        toterr += p.err;
        heap.push(p);
    }
    // Each panel split costs 30 evaluations; max_iter caps the number of splits
    // per initial panel.
    const int max_splits = tol.max_iter * static_cast<int>(pts.size());
    for (int it = 0; it < max_splits; ++it) {
        if (toterr < tol.abs + tol.rel * std::abs(total)) return sgn * total;
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval at machine resolution; accept its estimate as-is.
            continue;
        }
        Panel l = eval_panel(f, worst.a, mid);
        Panel r = eval_panel(f, mid, worst.b);
        total += l.value + r.value - worst.value;
        toterr += l.err + r.err - worst.err;
        heap.push(l);
        heap.push(r);
    }
    if (toterr < tol.abs + tol.rel * std::abs(total)) return sgn * total;
    throw QuadratureFail("integrate: adaptive subdivision budget exhausted",
                         sgn * total, toterr);
}

TruncatedSum sum_symmetric(const std::function<Complex(int)>& f,
                           const Tolerance& tol) {
    TruncatedSum out;
    out.value = f(0);
    out.terms_used = 1;
    int quiet = 0, tail_quiet = 0;
    const int max_shells = std::max(tol.max_iter, 8) * 50;
    Complex prev_shell = 0.0;
    Complex prev_corrected = 0.0;
    bool have_corrected = false;
    for (int m = 1; m <= max_shells; ++m) {
        const Complex shell = f(m) + f(-m);
        out.value += shell;
        out.terms_used += 2;
        out.error_estimate = std::abs(shell);
        if (out.error_estimate < tol.abs + tol.rel * std::abs(out.value)) {
            if (++quiet >= 3) return out;
        } else {
            quiet = 0;
        }
        // Power-law tail acceleration: once shells decay like m^-p with a
        // stable exponent, add the midpoint-rule tail estimate and stop when
        // the corrected value settles.
        if (m >= 16 && std::abs(shell) > 0.0 &&
            std::abs(shell) < std::abs(prev_shell)) {
            const double p =
                std::log(std::abs(prev_shell) / std::abs(shell)) /
                std::log(double(m) / (m - 1));
            if (p > 1.1 && p < 60.0) {
                // Midpoint-rule tail with the leading Euler-Maclaurin
                // correction: sum_{j>m} C j^-p with C = shell * m^p,
                // rearranged to avoid overflow in m^p.
                const double mh = m + 0.5;
                const Complex tail = shell * std::pow(m / mh, p) *
                                     (mh / (p - 1.0) + p / (24.0 * mh));
                const Complex corrected = out.value + tail;
                // The residual error of the corrected value decays one order
                // slower than its per-shell change; m * diff bounds it.
                const double err =
                    m * std::abs(corrected - prev_corrected);
                if (have_corrected &&
                    err < tol.abs + tol.rel * std::abs(corrected)) {
                    if (++tail_quiet >= 3) {
                        out.error_estimate = err;
                        out.value = corrected;
                        return out;
                    }
                } else {
                    tail_quiet = 0;
                }
                prev_corrected = corrected;
                have_corrected = true;
            }
        }
        prev_shell = shell;
    }
    throw SumDiverges("sum_symmetric: no convergence after " +
                      std::to_string(max_shells) + " shells");
}

} // namespace latticewave::numerics
