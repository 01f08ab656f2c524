#include "freeprob/hyp2f1.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "freeprob/quad.hpp"
#include "freeprob/sector.hpp"

namespace freeprob {

namespace {

constexpr double kSeriesDisc = 0.8;
constexpr double kSoftDisc = 0.95;
constexpr double kHardDisc = 0.97;
// parameter differences closer than this to an integer are treated as degenerate
constexpr double kDegenTol = 1e-5;

bool near_nonpos_int(double x, double tol = 1e-12) {
    double r = std::round(x);
    return r <= 0.0 && std::abs(x - r) < tol;
}

bool near_int(double x, double tol) { return std::abs(x - std::round(x)) < tol; }

double my_lgamma(double x) { return std::lgamma(x); }

}  // namespace

const char* hyp_route_name(HypRoute r) {
    switch (r) {
        case HypRoute::Series: return "series";
        case HypRoute::Euler15_3_3: return "euler_15.3.3";
        case HypRoute::Pfaff: return "pfaff";
        case HypRoute::Recip15_3_7: return "recip_15.3.7";
        case HypRoute::OneMinusRecip15_3_9: return "one_minus_recip_15.3.9";
        case HypRoute::PerturbedLimit: return "perturbed_limit";
        case HypRoute::IntegralFallback: return "integral";
    }
    return "?";
}

GammaLog gamma_log(double x) {
    GammaLog g;
    if (near_nonpos_int(x)) {
        g.log_abs = std::numeric_limits<double>::infinity();
        g.sign = 0;
        g.pole = true;
        return g;
    }
    g.pole = false;
    if (x > 0.0) {
        g.log_abs = my_lgamma(x);
        g.sign = 1;
        return g;
    }
    // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    double s = std::sin(kPi * x);
    g.log_abs = std::log(kPi / std::abs(s)) - my_lgamma(1.0 - x);
    g.sign = s > 0.0 ? 1 : -1;
    return g;
}

GammaRatio gamma_ratio(std::initializer_list<double> num, std::initializer_list<double> den) {
    double log_sum = 0.0;
    int sign = 1;
    for (double x : num) {
        GammaLog g = gamma_log(x);
        if (g.pole) return {std::numeric_limits<double>::infinity(), true};
        log_sum += g.log_abs;
        sign *= g.sign;
    }
    for (double x : den) {
        GammaLog g = gamma_log(x);
        if (g.pole) return {0.0, false};
        log_sum -= g.log_abs;
        sign *= g.sign;
    }
    return {sign * std::exp(log_sum), false};
}

double beta_function(double p, double q) {
    return std::exp(my_lgamma(p) + my_lgamma(q) - my_lgamma(p + q));
}

cplx f21_series(const HypParams& p, cplx z) {
    if (near_nonpos_int(p.c)) throw PreconditionError("f21_series: c is a non-positive integer");
    cplx term{1.0, 0.0}, sum{1.0, 0.0};
    for (long n = 0; n < 1'000'000; ++n) {
        double an = p.a + n, bn = p.b + n;
        if (an == 0.0 || bn == 0.0) return sum;  // terminating polynomial
        term *= (an * bn) / ((p.c + n) * (n + 1.0)) * z;
        sum += term;
        if (std::abs(term) <= 1e-17 * (1.0 + std::abs(sum)) && n > 2) return sum;
    }
    throw NoConvergence("f21_series: term budget exceeded");
}

cplx f21_integral(const HypParams& p, cplx z, double abs_tol) {
    if (!(p.c > p.b) || !(p.b > 0.0))
        throw PreconditionError("f21_integral: requires c > b > 0");
    if (z.imag() == 0.0 && z.real() >= 1.0 - 1e-14)
        throw DomainError("f21_integral: z on the cut [1,inf)");
    const double bm1 = p.b - 1.0, cbm1 = p.c - p.b - 1.0, a = p.a;
    QuadOut q = integrate_finite(
        [&](double x, double dl, double dr) -> cplx {
            cplx base = 1.0 - z * x;
            return std::pow(dl, bm1) * std::pow(dr, cbm1) * std::exp(-a * std::log(base));
        },
        0.0, 1.0, abs_tol);
    return q.value / beta_function(p.c - p.b, p.b);
}

namespace {

// unguarded one-sided principal power: near-cut arguments arise legitimately
// from the argument transformations, where std::log picks the side by the
// sign of the imaginary part
cplx cpow(cplx z, double a) { return std::exp(a * std::log(z)); }

struct Candidate {
    HypRoute route;
    cplx w;
    bool admissible = false;
    bool degenerate = false;
};

cplx eval_euler(const HypParams& p, cplx z) {
    cplx pref = std::pow(1.0 - z, cplx(p.c - p.a - p.b, 0.0));
    return pref * f21_series({p.c - p.a, p.c - p.b, p.c}, z);
}

cplx eval_pfaff(const HypParams& p, cplx z) {
    cplx pref = std::exp(-p.a * std::log(1.0 - z));
    return pref * f21_series({p.a, p.c - p.b, p.c}, z / (z - 1.0));
}

cplx eval_recip(const HypParams& p, cplx z) {
    // A&S 15.3.7, argument 1/z; requires b - a not an integer
    cplx w = 1.0 / z;
    GammaRatio c1 = gamma_ratio({p.c, p.b - p.a}, {p.b, p.c - p.a});
    GammaRatio c2 = gamma_ratio({p.c, p.a - p.b}, {p.a, p.c - p.b});
    if (c1.infinite || c2.infinite) throw RouteInadmissible("15.3.7: Gamma pole in coefficient");
    cplx sum{0.0, 0.0};
    if (c1.value != 0.0)
        sum += c1.value * cpow(-z, -p.a) *
               f21_series({p.a, 1.0 - p.c + p.a, 1.0 - p.b + p.a}, w);
    if (c2.value != 0.0)
        sum += c2.value * cpow(-z, -p.b) *
               f21_series({p.b, 1.0 - p.c + p.b, 1.0 - p.a + p.b}, w);
    return sum;
}

cplx eval_one_minus_recip(const HypParams& p, cplx z) {
    // A&S 15.3.9, argument 1 - 1/z; requires a + b - c not an integer
    cplx w = 1.0 - 1.0 / z;
    GammaRatio d1 = gamma_ratio({p.c, p.c - p.a - p.b}, {p.c - p.a, p.c - p.b});
    GammaRatio d2 = gamma_ratio({p.c, p.a + p.b - p.c}, {p.a, p.b});
    if (d1.infinite || d2.infinite) throw RouteInadmissible("15.3.9: Gamma pole in coefficient");
    cplx sum{0.0, 0.0};
    if (d1.value != 0.0)
        sum += d1.value * cpow(z, -p.a) *
               f21_series({p.a, p.a - p.c + 1.0, p.a + p.b - p.c + 1.0}, w);
    if (d2.value != 0.0)
        sum += d2.value * cpow(1.0 - z, p.c - p.a - p.b) * cpow(z, p.a - p.c) *
               f21_series({p.c - p.a, 1.0 - p.a, p.c - p.a - p.b + 1.0}, w);
    return sum;
}

bool series_params_ok(const HypParams& p) { return !near_nonpos_int(p.c, 1e-9); }

// admissibility of each transform at z (cut positions and inner series params)
Candidate make_candidate(const HypParams& p, cplx z, HypRoute route) {
    Candidate c;
    c.route = route;
    const bool on_pos_axis = z.imag() == 0.0 && z.real() >= 0.0;
    const bool on_neg_axis = z.imag() == 0.0 && z.real() <= 0.0;
    switch (route) {
        case HypRoute::Series:
            c.w = z;
            c.admissible = series_params_ok(p);
            break;
        case HypRoute::Euler15_3_3:
            c.w = z;
            c.admissible = series_params_ok({p.c - p.a, p.c - p.b, p.c});
            break;
        case HypRoute::Pfaff:
            c.w = z / (z - 1.0);
            c.admissible = series_params_ok({p.a, p.c - p.b, p.c});
            break;
        case HypRoute::Recip15_3_7:
            c.w = 1.0 / z;
            c.degenerate = near_int(p.b - p.a, kDegenTol);
            c.admissible = !on_pos_axis &&
                           (c.degenerate ||
                            (series_params_ok({p.a, 1.0 - p.c + p.a, 1.0 - p.b + p.a}) &&
                             series_params_ok({p.b, 1.0 - p.c + p.b, 1.0 - p.a + p.b})));
            break;
        case HypRoute::OneMinusRecip15_3_9:
            c.w = 1.0 - 1.0 / z;
            c.degenerate = near_int(p.a + p.b - p.c, kDegenTol);
            c.admissible = !on_neg_axis &&
                           (c.degenerate ||
                            (series_params_ok({p.a, p.a - p.c + 1.0, p.a + p.b - p.c + 1.0}) &&
                             series_params_ok({p.c - p.a, 1.0 - p.a, p.c - p.a - p.b + 1.0})));
            break;
        default:
            break;
    }
    return c;
}

cplx eval_route_basic(const HypParams& p, cplx z, HypRoute route) {
    switch (route) {
        case HypRoute::Series: return f21_series(p, z);
        case HypRoute::Euler15_3_3: return eval_euler(p, z);
        case HypRoute::Pfaff: return eval_pfaff(p, z);
        case HypRoute::Recip15_3_7: return eval_recip(p, z);
        case HypRoute::OneMinusRecip15_3_9: return eval_one_minus_recip(p, z);
        default: throw RouteInadmissible("not a basic route");
    }
}

}  // namespace

cplx f21_perturbed(const HypParams& p, cplx z) {
    // Shift (b, c) off the integer-difference lattice and extrapolate the shift
    // away with four Richardson stages; both transform families become regular
    // at shifted parameters. The smallest shift stays above kDegenTol so the
    // recursive f21 call routes through a regular transform.
    const double d0 = 4e-4;
    cplx f[4];
    for (int k = 0; k < 4; ++k) {
        double d = d0 / (1 << k);
        HypParams ps{p.a, p.b + d, p.c + 2.0 * d};
        f[k] = f21(ps, z).value;
    }
    // eliminate the O(d), O(d^2), O(d^3) error terms
    cplx t[4];
    for (int k = 0; k < 4; ++k) t[k] = f[k];
    for (int lvl = 1; lvl < 4; ++lvl) {
        double fac = std::pow(2.0, lvl);
        for (int k = 0; k + lvl < 4; ++k) t[k] = (fac * t[k + 1] - t[k]) / (fac - 1.0);
    }
    return t[0];
}

cplx f21_route(const HypParams& p, cplx z, HypRoute route) {
    if (route == HypRoute::IntegralFallback) return f21_integral(p, z);
    if (route == HypRoute::PerturbedLimit) return f21_perturbed(p, z);
    Candidate c = make_candidate(p, z, route);
    if (!c.admissible || std::abs(c.w) > kHardDisc)
        throw RouteInadmissible(std::string("route not applicable: ") + hyp_route_name(route));
    if (c.degenerate) throw RouteInadmissible("route degenerate at these parameters");
    return eval_route_basic(p, z, route);
}

EvalReport f21(const HypParams& p, cplx z) {
    if (z.imag() == 0.0 && z.real() >= 1.0)
        throw DomainError("f21: z on the cut [1,inf)");
    // terminating series: polynomial in z, valid everywhere
    if (near_nonpos_int(p.a) || near_nonpos_int(p.b))
        return {f21_series(p, z), HypRoute::Series, 1e-15};
    if (std::abs(z) <= kSeriesDisc)
        return {f21_series(p, z), HypRoute::Series, 1e-15};

    Candidate cands[5] = {
        make_candidate(p, z, HypRoute::Series),
        make_candidate(p, z, HypRoute::Euler15_3_3),
        make_candidate(p, z, HypRoute::Pfaff),
        make_candidate(p, z, HypRoute::Recip15_3_7),
        make_candidate(p, z, HypRoute::OneMinusRecip15_3_9),
    };
    std::sort(std::begin(cands), std::end(cands), [](const Candidate& x, const Candidate& y) {
        double ax = std::abs(x.w), ay = std::abs(y.w);
        if (ax != ay) return ax < ay;
        return static_cast<int>(x.route) < static_cast<int>(y.route);
    });

    for (double disc : {kSeriesDisc, kSoftDisc}) {
        for (const Candidate& c : cands) {
            if (!c.admissible || c.degenerate || std::abs(c.w) > disc) continue;
            double slack = std::abs(c.w) > kSeriesDisc ? 1e-13 : 1e-14;
            return {eval_route_basic(p, z, c.route), c.route, slack};
        }
    }

    // only degenerate transforms reach the disc: prefer the exact integral
    bool degenerate_reachable = false;
    for (const Candidate& c : cands)
        if (c.admissible && c.degenerate && std::abs(c.w) <= kSoftDisc) degenerate_reachable = true;
    if (degenerate_reachable) {
        // the Euler integrand has a pole at x = 1/z; when it crowds the contour
        // (0,1) the quadrature degrades and the perturbed limit is preferable
        cplx pole = 1.0 / z;
        double px = std::min(std::max(pole.real(), 0.0), 1.0);
        double pole_dist = std::abs(pole - cplx(px, 0.0));
        bool pole_near_contour = pole_dist < 0.02;
        if (!pole_near_contour) {
            if (p.c > p.b && p.b > 0.0)
                return {f21_integral(p, z), HypRoute::IntegralFallback, 1e-11};
            if (p.c > p.a && p.a > 0.0)  // F is symmetric in (a,b)
                return {f21_integral({p.b, p.a, p.c}, z), HypRoute::IntegralFallback, 1e-11};
        }
        return {f21_perturbed(p, z), HypRoute::PerturbedLimit, 1e-9};
    }

    // crossover lens near |z|=1, arg z = +-pi/3: stretch the series, else integral
    if (std::abs(z) <= kHardDisc && series_params_ok(p))
        return {f21_series(p, z), HypRoute::Series, 1e-12};
    if (p.c > p.b && p.b > 0.0)
        return {f21_integral(p, z), HypRoute::IntegralFallback, 1e-11};
    throw NoRoute("f21: no transform reaches the series disc");
}

}  // namespace freeprob
