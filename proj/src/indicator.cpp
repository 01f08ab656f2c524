#include "freeprob/indicator.hpp"

#include <cmath>

#include "freeprob/transforms.hpp"

namespace freeprob {

namespace {

bool axis_f_supported(const Dist& d, double y) {
    if (d.wrapped()) return false;
    switch (d.family) {
        case Family::Gaussian: return true;
        case Family::StudentT: return d.q > Rational(1) && y > -1.0;
        case Family::Ultraspherical: return d.p >= Rational(1);
        default: return false;
    }
}

}  // namespace

double axis_f(const Dist& d, double y) {
    if (!axis_f_supported(d, y))
        throw std::invalid_argument("axis_f: unsupported family or argument");
    cplx G = cauchy_G_continued(d, {0.0, y}).value;
    double g = G.imag();  // G is purely imaginary on the axis for symmetric laws
    if (!(g < 0.0)) throw std::runtime_error("axis_f: expected negative imaginary transform");
    return -1.0 / g;
}

namespace {

double axis_f_deriv(const Dist& d, double y, double h) {
    double d1 = (axis_f(d, y + h) - axis_f(d, y - h)) / (2.0 * h);
    double d2 = (axis_f(d, y + 0.5 * h) - axis_f(d, y - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

IndicatorProbe indicator_probe(const Dist& d, double t, double y_lo, double y_hi) {
    if (!(t > 0.0)) throw std::invalid_argument("indicator_probe: t > 0 required");
    IndicatorProbe out;

    const int n_grid = 80;
    std::vector<double> ys(n_grid);
    for (int i = 0; i < n_grid; ++i)
        ys[i] = y_lo + (y_hi - y_lo) * i / (n_grid - 1.0);

    // monotonicity of f itself
    out.monotone_f = true;
    double prev = axis_f(d, ys[0]);
    for (int i = 1; i < n_grid; ++i) {
        double cur = axis_f(d, ys[i]);
        if (!(cur > prev)) out.monotone_f = false;
        prev = cur;
    }

    const double h = 1e-4 * std::max(1.0, std::abs(y_hi - y_lo) / n_grid);
    auto ftp = [&](double y) { return (1.0 - t) + t * axis_f_deriv(d, y, h); };

    // bracket a sign change of f_t'
    double a = ys[0], fa = ftp(a);
    double b = a, fb = fa;
    bool found = false;
    for (int i = 1; i < n_grid; ++i) {
        b = ys[i];
        fb = ftp(b);
        if (fa * fb <= 0.0 && fa != fb) {
            found = true;
            break;
        }
        a = b;
        fa = fb;
    }
    if (!found) {
        if (t > 1.0)
            throw RangeExhausted("indicator_probe: no sign change of f_t' in the probed range");
        out.has_critical = false;
        return out;
    }
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (a + b);
        double fm = ftp(mid);
        if (fa * fm <= 0.0) {
            b = mid;
            fb = fm;
        } else {
            a = mid;
            fa = fm;
        }
        if (b - a < 1e-12 * std::max(1.0, std::abs(b))) break;
    }
    out.has_critical = true;
    out.y0 = 0.5 * (a + b);
    out.y1 = (1.0 - t) * out.y0 + t * axis_f(d, out.y0);
    return out;
}

IndicatorProbe indicator_probe(const Dist& d, double t) {
    double lo = d.family == Family::StudentT ? -1.0 + 1e-3 : -6.0;
    return indicator_probe(d, t, lo, 12.0);
}

double gaussian_ode_check(const std::vector<double>& y_grid) {
    Dist g = Dist::gaussian();
    double worst = 0.0;
    for (double y : y_grid) {
        double f = axis_f(g, y);
        double fp = axis_f_deriv(g, y, 1e-3);
        worst = std::max(worst, std::abs(fp - (f * f - y * f)));
    }
    return worst;
}

}  // namespace freeprob
