#include "freeprob/transforms.hpp"

#include <cmath>

#include "freeprob/cumulants.hpp"
#include "freeprob/hyp2f1.hpp"
#include "freeprob/quad.hpp"

namespace freeprob {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005024;

cplx conj(cplx z) { return std::conj(z); }

bool off_real_axis(cplx z) { return z.imag() != 0.0; }

// ---- base-family two-sheet transforms (no affine wrapper) ------------------

cplx tilde_base(const Dist& d, cplx z);

cplx beta_tilde(double p, double q, cplx z) {
    EvalReport r = f21({1.0, p, p + q}, 1.0 / z);
    return r.value / z;
}

cplx beta_prime_tilde(double p, double q, cplx z) {
    EvalReport r = f21({1.0, p, 1.0 + p + q}, 1.0 + 1.0 / z);
    return q / ((p + q) * z) * r.value;
}

cplx student_tilde(double q, cplx z) {
    EvalReport r = f21({1.0, 0.5, 1.0 + q}, 1.0 + 1.0 / (z * z));
    return (q - 0.5) / q * r.value / z;
}

cplx ultra_tilde(double p, cplx z) {
    // affine image of beta(p+1/2, p+1/2) under x -> 2x - 1
    return 0.5 * beta_tilde(p + 0.5, p + 0.5, 0.5 * (z + 1.0));
}

cplx semicircle_tilde(cplx z) {
    // branch with G ~ 1/z at infinity
    return 0.5 * z * (1.0 - std::sqrt(1.0 - 4.0 / (z * z)));
}

cplx mp_tilde(cplx z) { return 0.5 * (1.0 - std::sqrt(1.0 - 4.0 / z)); }

// Gaussian, straight contour; Im z bounded away from the axis
cplx gaussian_quad_upper(cplx z, double tol) {
    auto f = [&](double x) -> cplx {
        double dens = std::exp(-0.5 * x * x) / kSqrt2Pi;
        return dens / (z - x);
    };
    auto fneg = [&](double x) -> cplx {
        double dens = std::exp(-0.5 * x * x) / kSqrt2Pi;
        return dens / (z + x);
    };
    return integrate_real_line(f, fneg, tol).value;
}

// Gaussian on the strip |Im z| < 1 via the contour shifted to R - i: equals the
// continued transform there (the shift crosses the pole for Im z < 0).
cplx gaussian_shifted_contour(cplx z, double tol) {
    auto num = [&](double u) -> cplx {
        cplx w{u, -1.0};
        return std::exp(-0.5 * w * w) / kSqrt2Pi / (z - w);
    };
    auto fpos = [&](double x) -> cplx { return num(x); };
    auto fneg = [&](double x) -> cplx { return num(-x); };
    return integrate_real_line(fpos, fneg, tol).value;
}

cplx quad_base(const Dist& d, cplx z, double tol);

cplx gamma_tilde(double p, cplx z, double tol) {
    auto f = [&](double x) -> cplx {
        double dens = std::exp((p - 1.0) * std::log(x) - x - std::lgamma(p));
        return dens / (z - x);
    };
    return integrate_halfline(f, tol).value;
}

cplx inverse_gamma_tilde(double p, cplx z, double tol) {
    auto f = [&](double x) -> cplx {
        double dens = std::exp(-(p + 1.0) * std::log(x) - 1.0 / x - std::lgamma(p));
        return dens / (z - x);
    };
    return integrate_halfline(f, tol).value;
}

cplx tilde_base(const Dist& d, cplx z) {
    const double p = d.p.value(), q = d.q.value();
    switch (d.family) {
        case Family::Beta:
            if (z.imag() < 0.0) return conj(beta_tilde(p, q, conj(z)));
            return beta_tilde(p, q, z);
        case Family::BetaPrime:
            if (z.imag() < 0.0) return conj(beta_prime_tilde(p, q, conj(z)));
            return beta_prime_tilde(p, q, z);
        case Family::StudentT:
            if (z.imag() == 0.0) throw OutsideDomain("student t: real axis is the support");
            if (z.imag() < 0.0) return conj(student_tilde(q, conj(z)));
            return student_tilde(q, z);
        case Family::Ultraspherical:
            if (z.imag() < 0.0) return conj(ultra_tilde(p, conj(z)));
            return ultra_tilde(p, z);
        case Family::Semicircle: return semicircle_tilde(z);
        case Family::MarchenkoPastur: return mp_tilde(z);
        case Family::Cauchy:
            if (z.imag() == 0.0) throw OutsideDomain("cauchy: real axis is the support");
            return z.imag() > 0.0 ? 1.0 / (z + cplx(0.0, 1.0)) : 1.0 / (z - cplx(0.0, 1.0));
        case Family::PointMass: return 1.0 / (z - d.p.value());
        case Family::Gaussian: {
            if (z.imag() == 0.0) throw OutsideDomain("gaussian: real axis is the support");
            if (std::abs(z.imag()) > 0.5) return gaussian_quad_upper(z, 1e-13);
            // near the axis the straight contour loses accuracy: use the shifted
            // contour, undoing the residue term it picks up below the axis
            if (z.imag() > 0.0) return gaussian_shifted_contour(z, 1e-13);
            cplx dens = std::exp(-0.5 * z * z) / kSqrt2Pi;
            return gaussian_shifted_contour(z, 1e-13) + cplx(0.0, 2.0 * kPi) * dens;
        }
        case Family::Gamma:
            if (z.imag() == 0.0 && z.real() >= 0.0) throw OutsideDomain("gamma: on support");
            return gamma_tilde(d.p.value(), z, 1e-13);
        case Family::InverseGamma:
            if (z.imag() == 0.0 && z.real() >= 0.0) throw OutsideDomain("invgamma: on support");
            return inverse_gamma_tilde(d.p.value(), z, 1e-13);
    }
    throw UnsupportedFamily("tilde_base");
}

cplx quad_base(const Dist& d, cplx z, double tol) {
    const double p = d.p.value(), q = d.q.value();
    switch (d.family) {
        case Family::Beta: {
            double B = beta_function(p, q);
            return integrate_finite(
                       [&](double x, double dl, double dr) -> cplx {
                           return std::pow(dl, p - 1.0) * std::pow(dr, q - 1.0) / B / (z - x);
                       },
                       0.0, 1.0, tol)
                .value;
        }
        case Family::Ultraspherical: {
            double B = std::pow(4.0, p) * beta_function(p + 0.5, p + 0.5);
            return integrate_finite(
                       [&](double x, double dl, double dr) -> cplx {
                           return std::pow(dl * dr, p - 0.5) / B / (z - x);
                       },
                       -1.0, 1.0, tol)
                .value;
        }
        case Family::Semicircle:
            return integrate_finite(
                       [&](double x, double dl, double dr) -> cplx {
                           return std::sqrt(dl * dr) / (2.0 * kPi) / (z - x);
                       },
                       -2.0, 2.0, tol)
                .value;
        case Family::MarchenkoPastur:
            return integrate_finite(
                       [&](double x, double dl, double dr) -> cplx {
                           return std::sqrt(dr / dl) / (2.0 * kPi) / (z - x);
                       },
                       0.0, 4.0, tol)
                .value;
        case Family::BetaPrime: {
            double B = beta_function(p, q);
            return integrate_halfline(
                       [&](double x) -> cplx {
                           double dens =
                               std::exp((p - 1.0) * std::log(x) - (p + q) * std::log1p(x));
                           return dens / B / (z - x);
                       },
                       tol)
                .value;
        }
        case Family::Gamma: return gamma_tilde(p, z, tol);
        case Family::InverseGamma: return inverse_gamma_tilde(p, z, tol);
        case Family::StudentT: {
            double B = beta_function(0.5, q - 0.5);
            auto dens = [&](double x) { return std::pow(1.0 + x * x, -q) / B; };
            return integrate_real_line([&](double x) -> cplx { return dens(x) / (z - x); },
                                       [&](double x) -> cplx { return dens(x) / (z + x); }, tol)
                .value;
        }
        case Family::Cauchy: {
            auto dens = [&](double x) { return 1.0 / (kPi * (1.0 + x * x)); };
            return integrate_real_line([&](double x) -> cplx { return dens(x) / (z - x); },
                                       [&](double x) -> cplx { return dens(x) / (z + x); }, tol)
                .value;
        }
        case Family::Gaussian: return gaussian_quad_upper(z, tol);
        case Family::PointMass: return 1.0 / (z - d.p.value());
    }
    throw UnsupportedFamily("quad_base");
}

// analytic continuation of the density, for the residue correction term
cplx density_analytic(const Dist& d, cplx z) {
    const double p = d.p.value(), q = d.q.value();
    switch (d.family) {
        case Family::Beta:
            return principal_pow(z, p - 1.0) * principal_pow(1.0 - z, q - 1.0) /
                   beta_function(p, q);
        case Family::BetaPrime:
            return principal_pow(z, p - 1.0) * principal_pow(1.0 + z, -(p + q)) /
                   beta_function(p, q);
        case Family::Gamma:
            return principal_pow(z, p - 1.0) * std::exp(-z - std::lgamma(p));
        case Family::Gaussian: return std::exp(-0.5 * z * z) / kSqrt2Pi;
        case Family::StudentT: {
            // branch of (1+z^2)^{-q} analytic on the continuation domain, real on (0,inf)
            cplx w = 1.0 + z * z;
            cplx lg = std::log(w);
            if (z.real() < 0.0 && z.imag() < 0.0) lg -= cplx(0.0, 2.0 * kPi);
            return std::exp(-q * lg) / beta_function(0.5, q - 0.5);
        }
        case Family::Ultraspherical:
            return principal_pow(1.0 - z, p - 0.5) * principal_pow(1.0 + z, p - 0.5) /
                   (std::pow(4.0, p) * beta_function(p + 0.5, p + 0.5));
        default: throw UnsupportedFamily("density_analytic");
    }
}

}  // namespace

cplx cauchy_G(const Dist& d, cplx z) {
    double s = d.scale.value(), b = d.shift.value();
    if (d.family == Family::PointMass) return 1.0 / (z - d.p.value());
    cplx w = (z - b) / s;
    return tilde_base(d.base(), w) / s;
}

cplx cauchy_G_quad(const Dist& d, cplx z, double abs_tol) {
    if (d.family != Family::PointMass &&
        support_distance(d, z.real(), z.imag()) < 1e-6)
        throw NearSupport("cauchy_G_quad: z within 1e-6 of the support");
    double s = d.scale.value(), b = d.shift.value();
    if (d.family == Family::PointMass) return 1.0 / (z - d.p.value());
    cplx w = (z - b) / s;
    return quad_base(d.base(), w, abs_tol) / s;
}

bool in_continuation_domain(const Dist& d, cplx z) {
    if (d.wrapped()) {
        if (!(d.scale > Rational(0))) return false;
        cplx w = (z - d.shift.value()) / d.scale.value();
        return in_continuation_domain(d.base(), w);
    }
    double x = z.real(), y = z.imag();
    switch (d.family) {
        case Family::Beta: return !(y == 0.0 && (x <= 0.0 || x >= 1.0));
        case Family::BetaPrime:
        case Family::Gamma: return !(y == 0.0 && x <= 0.0);
        case Family::StudentT:
            // on i(-1,0) the evaluator takes the right-hand one-sided branch,
            // and z = 0 is kept as the one-sided limit from above
            if (y < 0.0) return !(x == 0.0 && y == -1.0);
            if (y == 0.0) return x >= 0.0;
            return x >= 0.0;  // upper axis: plain two-sheet values, continuous from the right
        case Family::Ultraspherical: return !(y == 0.0 && (x <= -1.0 || x >= 1.0));
        case Family::Gaussian: return true;
        default: return false;
    }
}

namespace {

// one-sided limit onto the support from above, Richardson over eps, eps/2
cplx limit_from_above(const Dist& d, double x) {
    const double eps = 1e-7;
    cplx g1 = tilde_base(d, {x, eps});
    cplx g2 = tilde_base(d, {x, 0.5 * eps});
    return 2.0 * g2 - g1;
}

}  // namespace

TransformValue cauchy_G_continued(const Dist& d, cplx z) {
    if (d.wrapped()) {
        if (!(d.scale > Rational(0)))
            throw OutsideDomain("cauchy_G_continued: negative dilation not supported");
        double s = d.scale.value(), b = d.shift.value();
        TransformValue t = cauchy_G_continued(d.base(), (z - b) / s);
        t.value /= s;
        return t;
    }
    if (!in_continuation_domain(d, z)) throw OutsideDomain("cauchy_G_continued: z outside domain");
    if (z.imag() > 0.0) return {tilde_base(d, z), Side::UpperPlane, 0};
    if (z.imag() == 0.0) {
        // interior of the support (or positive axis for Student t): limit from above
        return {limit_from_above(d, z.real()), Side::UpperPlane, 0};
    }
    cplx corr = cplx(0.0, 2.0 * kPi) * density_analytic(d, z);
    return {tilde_base(d, z) - corr, Side::LowerContinuation, -1};
}

cplx cauchy_G_derivative(const Dist& d, cplx z, cplx G) {
    const double p = d.p.value(), q = d.q.value();
    if (d.wrapped()) {
        double s = d.scale.value(), b = d.shift.value();
        cplx w = (z - b) / s;
        return cauchy_G_derivative(d.base(), w, G * s) / (s * s);
    }
    switch (d.family) {
        case Family::Beta:
            return ((p - 1.0) / z + (q - 1.0) / (z - 1.0)) * G -
                   (p + q - 1.0) / (z * (z - 1.0));
        case Family::BetaPrime:
            return ((p - 1.0) / z - (p + q) / (z + 1.0)) * G + q / (z * (z + 1.0));
        case Family::StudentT:
            return 2.0 * q / (1.0 + z * z) * ((q - 0.5) / q - z * G);
        case Family::Ultraspherical:
            return (2.0 * p - (2.0 * p - 1.0) * z * G) / (1.0 - z * z);
        case Family::Gamma: return ((p - 1.0) / z - 1.0) * G + 1.0 / z;
        case Family::Gaussian: return 1.0 - z * G;
        case Family::Semicircle: return G / (2.0 * G - z);
        case Family::MarchenkoPastur: return (G - G * G) / (2.0 * z * G - z);
        case Family::Cauchy:
        case Family::PointMass: return -G * G;
        case Family::InverseGamma: {
            // from the reciprocal rule against the gamma transform
            cplx w = 1.0 / z;
            Dist g = Dist::gamma_dist(d.p);
            cplx Gg = cauchy_G(g, w);
            cplx Ggp = cauchy_G_derivative(g, w, Gg);
            return -1.0 / (z * z) + 2.0 / (z * z * z) * Gg + Ggp / (z * z * z * z);
        }
    }
    throw UnsupportedFamily("cauchy_G_derivative");
}

cplx cauchy_G_derivative(const Dist& d, cplx z) {
    cplx G = in_continuation_domain(d, z) && z.imag() <= 0.0 ? cauchy_G_continued(d, z).value
                                                             : cauchy_G(d, z);
    return cauchy_G_derivative(d, z, G);
}

cplx reciprocal_F(const Dist& d, cplx z) {
    cplx G = cauchy_G(d, z);
    if (std::abs(G) < 1e-300) throw PoleOfF("reciprocal_F: G vanishes");
    return 1.0 / G;
}

cplx eta_transform(const Dist& d, cplx z) {
    cplx w = 1.0 / z;
    return 1.0 - z * reciprocal_F(d, w);
}

cplx voiculescu_phi(const Dist& d, cplx z, double tol) {
    cplx w = z;
    for (int it = 0; it < 100; ++it) {
        cplx G = cauchy_G(d, w);
        cplx F = 1.0 / G;
        cplx r = F - z;
        if (std::abs(r) < tol) return w - z;
        cplx Gp = cauchy_G_derivative(d, w, G);
        cplx Fp = -Gp / (G * G);
        cplx step = r / Fp;
        // keep the iterate in the upper half-plane
        cplx next = w - step;
        int guard = 0;
        while (next.imag() <= 0.0 && guard++ < 50) {
            step *= 0.5;
            next = w - step;
        }
        w = next;
    }
    throw NoConvergence("voiculescu_phi: Newton did not converge within 100 steps");
}

ConeSpec default_cone(const Dist& d) {
    double proxy = 1.0;
    try {
        // exact second central moment where the moment pipeline supports it
        MomentSequence m = exact_moments(d, 2);
        double m1 = m.m(1).get_d(), m2 = m.m(2).get_d();
        double var = m2 - m1 * m1;
        if (var > 0.0) proxy = std::sqrt(var);
    } catch (const std::exception&) {
    }
    return ConeSpec(1.0, 10.0 * (1.0 + proxy));
}

cplx voiculescu_phi(const Dist& d, cplx z, const ConeSpec& cone, double tol) {
    if (!cone.contains(z))
        throw OutsideDomain("voiculescu_phi: z outside the inversion cone");
    return voiculescu_phi(d, z, tol);
}

DensityEstimate stieltjes_density(const Dist& d, double x, double y0, int rungs) {
    // Richardson over the ladder y0, y0/2, ...: the Poisson extension is a
    // power series in y at interior points
    std::vector<double> vals(rungs);
    double y = y0;
    for (int j = 0; j < rungs; ++j) {
        vals[j] = -cauchy_G(d, {x, y}).imag() / kPi;
        y *= 0.5;
    }
    std::vector<double> row = vals;
    double best = row[0], prev_best = row[0];
    for (int k = 1; k < rungs; ++k) {
        double f = std::pow(2.0, k);
        for (int j = 0; j + k < rungs; ++j)
            row[j] = (f * row[j + 1] - row[j]) / (f - 1.0);
        row.resize(rungs - k);
        prev_best = best;
        best = row[0];
    }
    double err = std::abs(best - prev_best);
    if (!std::isfinite(best)) throw NonconvergentLadder("stieltjes_density");
    return {best, err};
}

Evaluator reciprocal_F_evaluator(const Dist& d) {
    return [d](cplx z) { return reciprocal_F(d, z); };
}

Evaluator eta_evaluator(const Dist& d) {
    return [d](cplx z) { return eta_transform(d, z); };
}

Evaluator boolean_power_F(const Dist& d, double t) {
    if (t < 0.0) throw std::invalid_argument("boolean_power_F: t >= 0 required");
    return [d, t](cplx z) { return (1.0 - t) * z + t * reciprocal_F(d, z); };
}

Evaluator monotone_convolve_F(const Evaluator& F1, const Evaluator& F2) {
    return [F1, F2](cplx z) { return F1(F2(z)); };
}

cplx semicircle_free_convolve_G(const Dist& d, cplx z) {
    cplx G = 1.0 / z;
    double s = 0.5;
    double resid = 1e300;
    for (int attempt = 0; attempt < 6; ++attempt) {
        cplx g = G;
        bool diverged = false;
        for (int it = 0; it < 3000; ++it) {
            cplx w = z - g;
            if (w.imag() <= 0.0) {
                diverged = true;
                break;
            }
            cplx nxt = (1.0 - s) * g + s * cauchy_G(d, w);
            resid = std::abs(nxt - g);
            g = nxt;
            if (resid < 1e-13) break;
        }
        if (!diverged && resid < 1e-12) {
            cplx check = g - cauchy_G(d, z - g);
            if (std::abs(check) < 1e-12 * std::max(1.0, std::abs(g))) return g;
        }
        s *= 0.5;  // halve the damping and retry
    }
    throw NoConvergence("semicircle_free_convolve_G: fixed point did not converge");
}

cplx numeric_derivative(const std::function<cplx(cplx)>& f, cplx z, double h) {
    auto central = [&](double hh) { return (f(z + hh) - f(z - hh)) / (2.0 * hh); };
    cplx d1 = central(h), d2 = central(0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
}

double ode_residual(const Dist& d, cplx z) {
    const double p = d.p.value(), q = d.q.value();
    auto Gfun = [&](cplx w) { return cauchy_G(d, w); };
    double h = 1e-3 * (1.0 + std::abs(z));
    h = std::min(h, 0.45 * z.imag());
    cplx G = cauchy_G(d, z);
    cplx Gp_num = numeric_derivative(Gfun, z, h);
    double r = std::abs(Gp_num - cauchy_G_derivative(d, z, G));
    switch (d.family) {
        case Family::BetaPrime: {
            Dist up = Dist::beta_prime(d.p, d.q + Rational(1));
            cplx G1 = cauchy_G(up, z);
            // recursion raising q by one
            r = std::max(r, std::abs(G - q / (p + q) * ((1.0 + z) * G1 - 1.0)));
            // derivative written against the raised-q transform
            cplx rhs = q * (q + 1.0) / ((p + q) * z) *
                       ((-z + (p - 1.0) / (q + 1.0)) * G1 + 1.0);
            r = std::max(r, std::abs(Gp_num - rhs));
            break;
        }
        case Family::StudentT: {
            Dist up = Dist::student_t(d.q + Rational(1));
            cplx G1 = cauchy_G(up, z);
            r = std::max(r, std::abs(Gp_num - (2.0 * q - 1.0) * (1.0 - z * G1)));
            r = std::max(r,
                         std::abs(G1 - ((q / (q - 0.5)) * G + z) / (1.0 + z * z)));
            break;
        }
        default: break;
    }
    return r;
}

double rv_transform_check(RvRule rule, Rational p, Rational q, cplx z) {
    switch (rule) {
        case RvRule::BetaToBetaPrime: {
            cplx lhs = cauchy_G(Dist::beta_prime(p, q), z);
            cplx inner = cauchy_G(Dist::beta(p, q), z / (z + 1.0));
            cplx rhs = 1.0 / (z + 1.0) + inner / ((z + 1.0) * (z + 1.0));
            return std::abs(lhs - rhs);
        }
        case RvRule::GammaInverse: {
            cplx lhs = cauchy_G(Dist::inverse_gamma(p), z);
            cplx rhs = 1.0 / z - cauchy_G(Dist::gamma_dist(p), 1.0 / z) / (z * z);
            return std::abs(lhs - rhs);
        }
        case RvRule::UltrasphericalAffine: {
            cplx lhs = cauchy_G(Dist::ultraspherical(p), z);
            Dist b = Dist::affine(Dist::beta(p + Rational(1, 2), p + Rational(1, 2)),
                                  Rational(2), Rational(-1));
            return std::abs(lhs - cauchy_G(b, z));
        }
        case RvRule::StudentSquare: {
            cplx lhs = cauchy_G(Dist::student_t(q), z);
            cplx rhs = z * cauchy_G(Dist::beta_prime(Rational(1, 2), q - Rational(1, 2)), z * z);
            return std::abs(lhs - rhs);
        }
    }
    throw std::invalid_argument("rv_transform_check: unknown rule");
}

}  // namespace freeprob
