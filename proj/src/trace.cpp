#include "freeprob/trace.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "freeprob/transforms.hpp"

namespace freeprob {

const char* anchor_name(Anchor a) {
    switch (a) {
        case Anchor::AtZero: return "at_zero";
        case Anchor::AtOne: return "at_one";
        case Anchor::AtMinusOne: return "at_minus_one";
        case Anchor::AtInfinity: return "at_infinity";
    }
    return "?";
}

const char* end_state_name(EndState e) {
    switch (e) {
        case EndState::ReachedInfinity: return "reached_infinity";
        case EndState::ReachedPoint: return "reached_point";
        case EndState::Stalled: return "stalled";
    }
    return "?";
}

namespace {

double pt_tol(double tol, double g) { return tol * std::max(1.0, std::abs(g)); }

std::optional<cplx> eval_G_any(const Dist& d, cplx z) {
    if (!in_continuation_domain(d, z)) return std::nullopt;
    try {
        return cauchy_G_continued(d, z).value;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::optional<cplx> eval_G(const Dist& d, cplx z) {
    if (z.imag() >= 0.0) return std::nullopt;
    return eval_G_any(d, z);
}

struct SeedCandidate {
    cplx z;
    double g;
};

// crossings of Im G = 0 on the circle |z - center| = r, lower half of the
// angle range. Threshold-type curves leave a finite anchor at angles that
// shrink like a power of the radius, so the sampling is geometric toward
// both axis directions (down to 1e-45 of pi).
std::vector<SeedCandidate> scan_circle(const Dist& d, cplx center, double r, double tol) {
    const int N = 900;
    std::vector<double> thetas;
    thetas.reserve(2 * N);
    for (int j = 0; j <= N; ++j) {
        double g = std::pow(10.0, -45.0 * (1.0 - static_cast<double>(j) / N));
        thetas.push_back(-kPi * g);          // clustered toward 0-
        thetas.push_back(-kPi * (1.0 - g));  // clustered toward -pi
    }
    std::sort(thetas.begin(), thetas.end(), std::greater<double>());
    thetas.erase(std::unique(thetas.begin(), thetas.end()), thetas.end());

    std::vector<SeedCandidate> out;
    auto point = [&](double th) { return center + r * std::exp(cplx(0.0, th)); };

    double prev_th = 0.0;
    std::optional<cplx> prev;
    for (double th : thetas) {
        std::optional<cplx> cur = eval_G(d, point(th));
        if (prev && cur && prev->imag() * cur->imag() < 0.0) {
            double a = prev_th, b = th;
            double fa = prev->imag();
            cplx zc = point(b);
            cplx gc = *cur;
            for (int it = 0; it < 100; ++it) {
                double mid = 0.5 * (a + b);
                std::optional<cplx> gm = eval_G(d, point(mid));
                if (!gm) break;
                if (fa * gm->imag() <= 0.0) {
                    b = mid;
                    gc = *gm;
                    zc = point(mid);
                } else {
                    a = mid;
                    fa = gm->imag();
                }
                if (std::abs(gm->imag()) <= 0.25 * pt_tol(tol, gm->real())) {
                    gc = *gm;
                    zc = point(mid);
                    break;
                }
            }
            if (std::abs(gc.imag()) <= pt_tol(tol, gc.real())) out.push_back({zc, gc.real()});
        }
        prev = cur;
        prev_th = th;
    }
    return out;
}

struct SeedPlan {
    cplx center;
    double radius;
    int dir;                      // march g upward (+1) or downward (-1)
    bool want_below_threshold;    // select g < threshold (else g > threshold)
    bool has_threshold;
    double threshold;
    bool want_positive_small;     // the large-radius seed: g in (0, 3/radius]
};

SeedPlan make_plan(const Dist& d, Anchor anchor, const TraceOptions& opt) {
    if (d.wrapped()) throw SeedFailure("trace: affine wrappers not supported");
    const double p = d.p.value(), q = d.q.value();
    SeedPlan s{};
    s.radius = opt.seed_radius;
    if (d.family == Family::Beta) {
        if (anchor == Anchor::AtZero) {
            s.center = {0.0, 0.0};
            s.dir = -1;
            if (p > 1.5) {
                s.has_threshold = true;
                s.threshold = -(p + q - 1.0) / (p - 1.0);
                s.want_below_threshold = true;
            } else if (p < 0.5) {
                s.has_threshold = false;  // transform blows up: largest positive g
            } else {
                throw SeedFailure("trace: beta left anchor needs p < 1/2 or p > 3/2");
            }
            return s;
        }
        if (anchor == Anchor::AtOne) {
            s.center = {1.0, 0.0};
            s.dir = +1;
            if (q > 1.5) {
                s.has_threshold = true;
                s.threshold = (p + q - 1.0) / (q - 1.0);
                s.want_below_threshold = false;
            } else if (q < 0.5) {
                s.has_threshold = false;
            } else {
                throw SeedFailure("trace: beta right anchor needs q < 1/2 or q > 3/2");
            }
            return s;
        }
        throw SeedFailure("trace: unsupported anchor for beta");
    }
    if (d.family == Family::BetaPrime) {
        if (anchor == Anchor::AtZero) {
            s.center = {0.0, 0.0};
            s.dir = -1;
            if (p > 1.5) {
                s.has_threshold = true;
                s.threshold = -q / (p - 1.0);
                s.want_below_threshold = true;
            } else if (p < 0.5) {
                s.has_threshold = false;
            } else {
                throw SeedFailure("trace: beta prime left anchor needs p < 1/2 or p > 3/2");
            }
            return s;
        }
        if (anchor == Anchor::AtInfinity) {
            s.center = {0.0, 0.0};
            s.radius = opt.seed_radius_inf;
            s.dir = +1;
            s.want_positive_small = true;
            return s;
        }
        throw SeedFailure("trace: unsupported anchor for beta prime");
    }
    throw SeedFailure("trace: only beta and beta prime are traceable");
}

// Threshold anchors: the level curve leaves the anchor with imaginary parts
// far below double resolution, so sign-scanning cannot bracket it. Solve
// G(z) = threshold + dir*delta directly by a damped complex Newton started
// from a fan of nearby points.
std::optional<SeedCandidate> seed_threshold_newton(const Dist& d, const SeedPlan& plan,
                                                   double tol) {
    const double delta = 1e-7 * std::max(1.0, std::abs(plan.threshold));
    const double g0 = plan.threshold + (plan.want_below_threshold ? -delta : delta);
    for (double r0 : {1e-7, 1e-6, 1e-5, 1e-4, 1e-3}) {
        for (double th : {-1e-6, -0.3, -0.8, -1.6, -2.4, -3.0}) {
            cplx z = plan.center + r0 * std::exp(cplx(0.0, th));
            bool ok = false;
            for (int it = 0; it < 60; ++it) {
                std::optional<cplx> G = eval_G_any(d, z);
                if (!G) break;
                cplx resid = *G - g0;
                if (std::abs(resid) <= 0.25 * pt_tol(tol, g0)) {
                    ok = true;
                    break;
                }
                cplx Gp = cauchy_G_derivative(d, z, *G);
                if (!(std::abs(Gp) > 0.0)) break;
                cplx step = resid / Gp;
                double cap = 0.3 * (std::abs(z - plan.center) + 1e-7);
                if (std::abs(step) > cap) step *= cap / std::abs(step);
                z -= step;
                if (std::abs(z - plan.center) > 0.5) break;
            }
            if (!ok) continue;
            if (z.imag() > 0.0) z = {z.real(), -1e-16 * (1.0 + std::abs(z))};
            std::optional<cplx> G = eval_G_any(d, z);
            if (!G) continue;
            if (std::abs(*G - g0) > pt_tol(tol, g0)) continue;
            return SeedCandidate{z, G->real()};
        }
    }
    return std::nullopt;
}

std::optional<SeedCandidate> pick_seed(const SeedPlan& plan,
                                       const std::vector<SeedCandidate>& cands) {
    std::optional<SeedCandidate> best;
    for (const SeedCandidate& c : cands) {
        if (plan.want_positive_small) {
            if (c.g <= 0.0 || c.g > 3.0 / plan.radius) continue;
            if (!best || c.g < best->g) best = c;
        } else if (plan.has_threshold) {
            bool side_ok = plan.want_below_threshold ? c.g < plan.threshold
                                                     : c.g > plan.threshold;
            if (!side_ok) continue;
            if (!best ||
                std::abs(c.g - plan.threshold) < std::abs(best->g - plan.threshold))
                best = c;
        } else {
            // blow-up anchor: the branch with the largest |g|, sign by march side
            double want_sign = plan.dir < 0 ? +1.0 : -1.0;
            if (c.g * want_sign <= 1.0) continue;
            if (!best || std::abs(c.g) > std::abs(best->g)) best = c;
        }
    }
    return best;
}

}  // namespace

CurveTrace trace_real_level_curve(const Dist& d, Anchor anchor, const TraceOptions& opt) {
    SeedPlan plan = make_plan(d, anchor, opt);

    std::optional<SeedCandidate> seed;
    double radius = plan.radius;
    if (plan.has_threshold) {
        seed = seed_threshold_newton(d, plan, opt.trace_tol);
        radius = seed ? std::max(1e-7, std::abs(seed->z - plan.center)) : radius;
    } else {
        for (int attempt = 0; attempt < 4 && !seed; ++attempt) {
            seed = pick_seed(plan, scan_circle(d, plan.center, radius, opt.trace_tol));
            if (!seed) radius *= anchor == Anchor::AtInfinity ? 2.0 : 10.0;
        }
    }
    if (!seed) throw SeedFailure("trace: no admissible level crossing near the anchor");

    CurveTrace tr;
    tr.start_anchor = anchor;
    cplx z = seed->z;
    double g = seed->g;
    tr.points.push_back(z);
    tr.g_values.push_back(g);

    const bool from_infinity = anchor == Anchor::AtInfinity;
    bool escaped = false;
    double h = std::max(1e-7, 0.05 * radius);
    cplx prev_dz{0.0, 0.0};

    auto finish_point = [&](cplx P) {
        tr.end_state = EndState::ReachedPoint;
        tr.end_point = P;
        std::ostringstream os;
        os << "reached (" << P.real() << "," << P.imag() << ") from " << anchor_name(anchor);
        tr.note = os.str();
    };

    for (int step = 0; step < opt.max_steps; ++step) {
        std::optional<cplx> Gz = eval_G(d, z);
        if (!Gz) {
            tr.end_state = EndState::Stalled;
            tr.note = "left the continuation domain";
            return tr;
        }
        cplx Gp = cauchy_G_derivative(d, z, *Gz);
        if (!(std::abs(Gp) > 0.0)) {
            tr.end_state = EndState::Stalled;
            tr.note = "vanishing derivative";
            return tr;
        }
        double dg = plan.dir * h * std::abs(Gp);
        double target = g + dg;

        // predictor plus complex Newton corrector at fixed real target
        cplx zn = z + (target - g) / Gp;
        bool ok = false;
        for (int it = 0; it < 15; ++it) {
            if (zn.imag() >= 0.0) zn = {zn.real(), -1e-16 * (1.0 + std::abs(zn))};
            std::optional<cplx> Gn = eval_G(d, zn);
            if (!Gn || std::abs(zn - z) > 6.0 * h) break;
            cplx resid = *Gn - target;
            if (std::abs(resid) <= 0.5 * pt_tol(opt.trace_tol, target)) {
                ok = true;
                break;
            }
            cplx Gpn = cauchy_G_derivative(d, zn, *Gn);
            if (!(std::abs(Gpn) > 0.0)) break;
            zn -= resid / Gpn;
        }
        if (!ok) {
            h *= 0.4;
            if (h < 1e-15 * (1.0 + std::abs(z))) {
                tr.end_state = EndState::Stalled;
                tr.note = "step size underflow";
                return tr;
            }
            continue;
        }
        cplx dz = zn - z;
        if (std::abs(prev_dz) > 0.0) {
            double turn = std::abs(std::arg(dz / prev_dz));
            if (turn > 0.5) {
                h *= 0.5;
                continue;  // retry with a shorter step
            }
        }
        z = zn;
        g = target;
        prev_dz = dz;
        tr.points.push_back(z);
        tr.g_values.push_back(g);
        h = std::min(h * 1.35, 0.03 * (1.0 + std::abs(z)));

        if (!escaped) {
            if (from_infinity)
                escaped = std::abs(z) < 0.5 * plan.radius;
            else
                escaped = std::abs(z - plan.center) > 20.0 * opt.snap;
        }
        if (escaped) {
            for (cplx P : {cplx(0.0, 0.0), cplx(1.0, 0.0), cplx(-1.0, 0.0)}) {
                if (std::abs(z - P) < opt.snap) {
                    finish_point(P);
                    return tr;
                }
            }
            if (std::abs(z) > opt.r_max) {
                tr.end_state = EndState::ReachedInfinity;
                tr.end_radius = std::abs(z);
                tr.note = "escaped past r_max";
                return tr;
            }
        }
        if (std::abs(g) > opt.g_cap) {
            tr.end_state = EndState::Stalled;
            tr.note = "transform value overflow";
            return tr;
        }
    }
    tr.end_state = EndState::Stalled;
    tr.note = "step budget exhausted";
    return tr;
}

}  // namespace freeprob
