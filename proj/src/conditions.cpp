#include "freeprob/conditions.hpp"

#include <cmath>
#include <optional>
#include <sstream>

#include "freeprob/fid.hpp"
#include "freeprob/parallel.hpp"
#include "freeprob/transforms.hpp"

namespace freeprob {

namespace {

std::optional<cplx> try_G(const Dist& d, cplx z) {
    if (!in_continuation_domain(d, z)) return std::nullopt;
    try {
        return cauchy_G_continued(d, z).value;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

struct Box {
    double x0, x1, y0, y1;
};

Box domain_box(const Dist& d) {
    switch (d.family) {
        case Family::Beta: return {-3.0, 4.0, -3.0, 3.0};
        case Family::BetaPrime: return {-5.0, 5.0, -4.0, 4.0};
        case Family::Gamma: return {-4.0, 6.0, -4.0, 4.0};
        case Family::StudentT: return {-4.0, 4.0, -4.0, 4.0};
        default: return {-3.0, 3.0, -3.0, 3.0};
    }
}

// critical points solve G(z) * (a z + b) = c, a first-order consequence of the
// family ODE; the Newton sweep follows with duplicates merged at 1e-8
struct CriticalEq {
    double a, b, c;
};

CriticalEq critical_eq(const Dist& d) {
    const double p = d.p.value(), q = d.q.value();
    switch (d.family) {
        case Family::Beta: return {p + q - 2.0, -(p - 1.0), p + q - 1.0};
        case Family::BetaPrime: return {q + 1.0, -(p - 1.0), q};
        case Family::Gamma: return {-1.0, p - 1.0, -1.0};
        case Family::StudentT: return {q, 0.0, q - 0.5};
        default: throw UnsupportedFamily("critical_eq");
    }
}

std::vector<cplx> critical_sweep(const Dist& d, const Box& box, int grid_n) {
    CriticalEq eq = critical_eq(d);
    // Newton from every grid start is independent work; the candidate list is
    // merged in start order, so the result matches a serial sweep exactly
    auto from_start = [&](size_t idx) -> cplx {
        const cplx none{1e308, 0.0};
        int i = static_cast<int>(idx) / grid_n, j = static_cast<int>(idx) % grid_n;
        cplx z{box.x0 + (box.x1 - box.x0) * (i + 0.5) / grid_n,
               box.y0 + (box.y1 - box.y0) * (j + 0.5) / grid_n};
        bool converged = false;
        for (int it = 0; it < 40; ++it) {
            std::optional<cplx> G = try_G(d, z);
            if (!G) break;
            cplx L = eq.a * z + eq.b;
            cplx H = *G * L - eq.c;
            if (std::abs(H) < 1e-12 * (1.0 + std::abs(*G) * std::abs(L))) {
                converged = true;
                break;
            }
            cplx Hp = cauchy_G_derivative(d, z, *G) * L + *G * eq.a;
            if (!(std::abs(Hp) > 0.0)) break;
            cplx step = H / Hp;
            if (std::abs(step) > 1.0) step *= 1.0 / std::abs(step);
            z -= step;
            if (std::abs(z) > 50.0) break;
        }
        if (!converged || !in_continuation_domain(d, z)) return none;
        // the anchor points solve the algebraic equation without being
        // critical; confirm stationarity through the ODE derivative
        for (cplx s0 : {cplx(0.0, 0.0), cplx(1.0, 0.0), cplx(-1.0, 0.0)})
            if (std::abs(z - s0) < 1e-5) return none;
        std::optional<cplx> Gr = try_G(d, z);
        if (!Gr) return none;
        cplx Gp = cauchy_G_derivative(d, z, *Gr);
        if (std::abs(Gp) > 1e-6 * (1.0 + std::abs(*Gr))) return none;
        return z;
    };
    std::vector<cplx> cand =
        par::map_indexed<cplx>(static_cast<size_t>(grid_n) * grid_n, from_start);
    std::vector<cplx> roots;
    for (cplx z : cand) {
        if (z.real() > 1e307) continue;
        bool dup = false;
        for (cplx r : roots)
            if (std::abs(r - z) < 1e-8) dup = true;
        if (!dup) roots.push_back(z);
    }
    return roots;
}

constexpr double kImTol = 1e-6;

struct BoundaryLimit {
    bool infinite = false;
    cplx value{0.0, 0.0};
    bool allowed = false;  // in the closed upper half-plane, on R, or infinity
};

// one-sided boundary limit along a shrinking ladder; a steadily growing
// modulus is classified as the (always allowed) limit at infinity
BoundaryLimit ladder_limit(const Dist& d, cplx base, cplx dir, double e0 = 1e-5) {
    BoundaryLimit out;
    std::optional<cplx> g1 = try_G(d, base + e0 * dir);
    std::optional<cplx> g2 = try_G(d, base + 0.5 * e0 * dir);
    if (!g1 || !g2) return out;
    if (std::abs(*g2) > 1.3 * std::abs(*g1) && std::abs(*g2) > 50.0) {
        out.infinite = true;
        out.allowed = true;
        return out;
    }
    out.value = 2.0 * *g2 - *g1;
    out.allowed = out.value.imag() >= -kImTol * (1.0 + std::abs(out.value));
    return out;
}

SubResult check_extension_grid(const Dist& d, const Box& box, int grid_n) {
    SubResult r;
    r.name = "extension evaluates on the domain grid";
    int bad = 0, total = 0;
    cplx witness{0, 0};
    for (int i = 0; i < grid_n; ++i)
        for (int j = 0; j < grid_n; ++j) {
            cplx z{box.x0 + (box.x1 - box.x0) * (i + 0.5) / grid_n,
                   box.y0 + (box.y1 - box.y0) * (j + 0.5) / grid_n};
            if (!in_continuation_domain(d, z)) continue;
            ++total;
            std::optional<cplx> G = try_G(d, z);
            if (!G || !std::isfinite(G->real()) || !std::isfinite(G->imag())) {
                ++bad;
                witness = z;
            }
        }
    r.pass = bad == 0 && total > 0;
    r.witness = witness;
    std::ostringstream os;
    os << total - bad << "/" << total << " grid points evaluate finitely";
    r.detail = os.str();
    return r;
}

SubResult check_no_lower_critical(const Dist& d, const Box& box, int grid_n) {
    SubResult r;
    r.name = "no critical point with a lower-half-plane value";
    std::vector<cplx> roots = critical_sweep(d, box, grid_n);
    r.pass = true;
    for (cplx z : roots) {
        std::optional<cplx> G = try_G(d, z);
        if (!G) continue;
        if (G->imag() < -1e-9 * (1.0 + std::abs(*G))) {
            r.pass = false;
            r.witness = z;
            break;
        }
    }
    std::ostringstream os;
    os << roots.size() << " critical candidates examined";
    r.detail = os.str();
    return r;
}

SubResult check_no_real_critical(const Dist& d, const Box& box, int grid_n) {
    SubResult r;
    r.name = "no critical point with a real value";
    std::vector<cplx> roots = critical_sweep(d, box, grid_n);
    r.pass = true;
    for (cplx z : roots) {
        std::optional<cplx> G = try_G(d, z);
        if (!G) continue;
        if (std::abs(G->imag()) < 1e-9 * (1.0 + std::abs(*G))) {
            r.pass = false;
            r.witness = z;
            break;
        }
    }
    std::ostringstream os;
    os << roots.size() << " critical candidates examined";
    r.detail = os.str();
    return r;
}

SubResult check_traces_real(const Dist& d, const std::vector<CurveTrace>& traces) {
    SubResult r;
    r.name = "level-curve boundary carries real values";
    r.pass = true;
    int checked = 0;
    for (const CurveTrace& tr : traces) {
        for (size_t k = 0; k < tr.points.size(); k += std::max<size_t>(1, tr.points.size() / 40)) {
            std::optional<cplx> G = try_G(d, tr.points[k]);
            ++checked;
            if (!G || std::abs(G->imag()) > 1e-8 * (1.0 + std::abs(G->real()))) {
                r.pass = false;
                r.witness = tr.points[k];
            }
        }
    }
    std::ostringstream os;
    os << checked << " trace points rechecked";
    r.detail = os.str();
    return r;
}

SubResult check_boundary_beta_like(const Dist& d) {
    // boundary families of the curve-bounded domain: real rays from above,
    // the finite anchors, and infinity
    SubResult r;
    r.name = "boundary limits stay in the allowed closed region";
    r.pass = true;
    std::ostringstream os;
    const bool beta = d.family == Family::Beta;

    for (double x : {-3.0, -2.0, -1.0, -0.4, -0.05}) {
        BoundaryLimit lim = ladder_limit(d, {x, 0.0}, {0.0, 1.0});
        if (!lim.allowed) {
            r.pass = false;
            r.witness = {x, 0.0};
        }
    }
    if (beta) {
        for (double x : {1.05, 1.4, 2.0, 3.0, 3.9}) {
            BoundaryLimit lim = ladder_limit(d, {x, 0.0}, {0.0, 1.0});
            if (!lim.allowed) {
                r.pass = false;
                r.witness = {x, 0.0};
            }
        }
    }
    // finite anchors: real limit or blow-up, approached from inside
    std::vector<cplx> anchors = beta ? std::vector<cplx>{{0.0, 0.0}, {1.0, 0.0}}
                                     : std::vector<cplx>{{0.0, 0.0}, {-1.0, 0.0}};
    for (cplx A : anchors) {
        BoundaryLimit lim = ladder_limit(d, A, {0.0, 1.0}, 1e-7);
        if (!lim.allowed) {
            r.pass = false;
            r.witness = A;
        }
    }
    // infinity through the upper half-plane: the transform decays
    cplx far = *try_G(d, {0.0, 1e6});
    if (std::abs(far) > 1e-4) r.pass = false;
    os << "rays, anchors and infinity sampled";
    r.detail = os.str();
    return r;
}

SubResult check_boundary_gamma_fail(const Dist& d) {
    // whole-plane-minus-cut domain: the lower lip of the cut carries limits
    // with negative imaginary part, which is exactly the failure mode
    SubResult r;
    r.name = "boundary limits stay in the allowed closed region";
    r.pass = true;
    std::ostringstream os;
    for (double x : {-2.0, -1.0, -0.5}) {
        BoundaryLimit lim = ladder_limit(d, {x, 0.0}, {0.0, -1.0});
        if (!lim.allowed) {
            r.pass = false;
            r.witness = {x, 0.0};
            os << "witness sequence z_n = " << x << " - i/2^n -> limit (" << lim.value.real()
               << "," << lim.value.imag() << ") below the real axis; ";
        }
    }
    for (double x : {-2.0, -1.0, -0.5}) {
        BoundaryLimit lim = ladder_limit(d, {x, 0.0}, {0.0, 1.0});
        if (!lim.allowed) {
            r.pass = false;
            r.witness = {x, 0.0};
        }
    }
    if (os.str().empty()) os << "cut lips sampled from both sides";
    r.detail = os.str();
    return r;
}

SubResult check_axis_univalence_t(const Dist& d) {
    SubResult r;
    r.name = "transform univalent on the imaginary segment onto i(-inf,0)";
    r.pass = true;
    double prev = -1e308;
    for (double y = -0.98; y <= 6.0; y += 0.07) {
        std::optional<cplx> G = try_G(d, {0.0, y});
        if (!G) continue;
        std::optional<cplx> Gp;
        try {
            Gp = cauchy_G_derivative(d, {0.0, y}, *G);
        } catch (const std::exception&) {
        }
        if (Gp && !(Gp->real() > 0.0)) {
            r.pass = false;
            r.witness = {0.0, y};
        }
        if (!(G->imag() > prev)) {
            r.pass = false;
            r.witness = {0.0, y};
        }
        prev = G->imag();
    }
    // endpoint behavior: blow-up toward the branch point, decay at infinity
    cplx near_bp = *try_G(d, {0.0, -1.0 + 1e-5});
    if (!(near_bp.imag() < -1e2)) r.pass = false;
    cplx far = *try_G(d, {0.0, 1e6});
    if (std::abs(far) > 1e-4) r.pass = false;
    r.detail = "derivative positive and values increasing along the segment";
    return r;
}

SubResult check_boundary_t(const Dist& d) {
    SubResult r;
    r.name = "boundary limits stay in the allowed closed region";
    r.pass = true;
    double q = d.q.value();
    auto allowed = [&](const ReIm& v) {
        return v.re <= kImTol || v.im >= -kImTol;
    };
    for (double y = -4.0; y < -1.05; y += 0.21) {
        ReIm v = t_boundary_signs(q, TBoundaryRegion::PosImagAxisBelowMinus1, y);
        if (!allowed(v)) {
            r.pass = false;
            r.witness = {0.0, y};
        }
    }
    for (double x = -4.0; x < -0.05; x += 0.23) {
        ReIm v = t_boundary_signs(q, TBoundaryRegion::NegRealLine, x);
        if (!allowed(v)) {
            r.pass = false;
            r.witness = {x, 0.0};
        }
    }
    for (double y = -0.95; y < -0.04; y += 0.06) {
        ReIm v = t_boundary_signs(q, TBoundaryRegion::LeftImagSegment, y);
        if (!allowed(v)) {
            r.pass = false;
            r.witness = {0.0, y};
        }
    }
    r.detail = "three boundary families sampled through the closed-form limits";
    return r;
}

}  // namespace

ConditionReport verify_condition(const Dist& d, Condition which,
                                 const std::vector<CurveTrace>& traces, int grid_n) {
    ConditionReport rep;
    rep.condition = which;
    const Box box = domain_box(d);

    if (which == Condition::B) {
        if (d.family != Family::StudentT)
            throw UnsupportedFamily("condition B implemented for the student t family");
        rep.subs.push_back(check_axis_univalence_t(d));
        rep.subs.push_back(check_extension_grid(d, box, grid_n));
        rep.subs.push_back(check_no_lower_critical(d, box, grid_n));
        rep.subs.push_back(check_boundary_t(d));
    } else if (which == Condition::A) {
        rep.subs.push_back(check_extension_grid(d, box, grid_n));
        rep.subs.push_back(check_no_lower_critical(d, box, grid_n));
        if (d.family == Family::Gamma) {
            rep.subs.push_back(check_boundary_gamma_fail(d));
        } else if (d.family == Family::Beta || d.family == Family::BetaPrime) {
            rep.subs.push_back(check_boundary_beta_like(d));
            if (!traces.empty()) rep.subs.push_back(check_traces_real(d, traces));
        } else {
            throw UnsupportedFamily("condition A verifier: beta, beta prime or gamma");
        }
    } else {
        if (d.family != Family::Beta && d.family != Family::BetaPrime)
            throw UnsupportedFamily("condition C verifier: beta or beta prime");
        rep.subs.push_back(check_extension_grid(d, box, grid_n));
        rep.subs.push_back(check_no_real_critical(d, box, grid_n));
    }

    rep.pass = true;
    for (const SubResult& s : rep.subs) {
        rep.samples += 1;
        if (!s.pass) rep.pass = false;
    }
    return rep;
}

}  // namespace freeprob
