#include "freeprob/fid.hpp"

#include <cmath>
#include <sstream>

#include "freeprob/hyp2f1.hpp"
#include "freeprob/sector.hpp"
#include "freeprob/transforms.hpp"

namespace freeprob {

ExponentReport classify_exponent(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("classify_exponent: alpha > 0 required");
    if (alpha == 1.0) throw AlphaOne("classify_exponent: alpha = 1 not classifiable");
    ExponentReport rep;
    rep.alpha = alpha;
    rep.lower_family = alpha < 1.0;
    double w = 1.0 / std::abs(alpha - 1.0);
    rep.theta_alpha = (w - 1.0) * kPi;
    // integral w is a component boundary; snap against rounding noise
    bool boundary = std::abs(w - std::round(w)) < 1e-9 * std::max(1.0, w);
    double fl = std::floor(w);
    bool inside = !boundary && w > 2.0 && std::fmod(fl, 2.0) == 0.0;
    rep.in_I = inside;
    rep.interval_n = inside ? static_cast<int>(fl / 2.0) : 0;
    return rep;
}

bool exponent_in_I(const Rational& alpha) {
    if (alpha == Rational(1) || !(alpha > Rational(0))) return false;
    // w = 1/|alpha - 1| = den / |num - den|
    Rational d = alpha - Rational(1);
    std::int64_t wnum = d.den;
    std::int64_t wden = d.num < 0 ? -d.num : d.num;
    if (wnum <= 2 * wden) return false;         // w <= 2
    if (wnum % wden == 0) return false;         // w integral: boundary
    return (wnum / wden) % 2 == 0;              // floor even
}

namespace {

FidVerdict known(const char* citation) {
    FidVerdict v;
    v.status = FidStatus::KnownFID;
    v.reason = FidReason::ParamRegion;
    v.citation = citation;
    return v;
}

FidVerdict not_fid(FidReason reason, const std::string& citation, const std::string& evidence) {
    FidVerdict v;
    v.status = FidStatus::CertifiedNotFID;
    v.reason = reason;
    v.citation = citation;
    v.evidence = evidence;
    return v;
}

FidVerdict inconclusive(const std::string& note) {
    FidVerdict v;
    v.status = FidStatus::Inconclusive;
    v.evidence = note;
    return v;
}

bool student_fid_range(const Rational& q) {
    // (1/2, 2] and [2n + 1/4, 2n + 2] for n >= 1
    if (q <= Rational(2)) return true;
    for (std::int64_t n = 1; Rational(2 * n) < q; ++n) {
        if (Rational(8 * n + 1, 4) <= q && q <= Rational(2 * n + 2)) return true;
    }
    return false;
}

}  // namespace

FidVerdict region_classifier(const Dist& dist) {
    const Dist d = dist.base();  // affine images preserve FID membership
    const Rational half(1, 2), one(1), three_half(3, 2), two(2);
    switch (d.family) {
        case Family::Beta: {
            const Rational &p = d.p, &q = d.q;
            if (p >= three_half && q >= three_half)
                return known("beta FID region: p,q >= 3/2");
            if (p <= half && p + q >= two) return known("beta FID region: p <= 1/2, p+q >= 2");
            if (q <= half && p + q >= two) return known("beta FID region: q <= 1/2, p+q >= 2");
            if (p <= one && q <= one)
                return not_fid(FidReason::SubordinationEndpoint,
                               "beta with p,q <= 1: reciprocal transform vanishes at both "
                               "support endpoints",
                               "p,q <= 1");
            if (exponent_in_I(p))
                return not_fid(FidReason::ExponentInI, "beta: left edge exponent in I",
                               "p = " + p.str());
            if (exponent_in_I(q))
                return not_fid(FidReason::ExponentInI, "beta: right edge exponent in I",
                               "q = " + q.str());
            return inconclusive("beta parameters outside the proven regions");
        }
        case Family::BetaPrime: {
            const Rational& p = d.p;
            if (p <= half || p >= three_half)
                return known("beta prime FID region: p in (0,1/2] or [3/2,inf)");
            if (exponent_in_I(p))
                return not_fid(FidReason::ExponentInI, "beta prime: edge exponent in I",
                               "p = " + p.str());
            return inconclusive("beta prime parameters outside the proven regions");
        }
        case Family::Gamma: {
            const Rational& p = d.p;
            if (p <= half || p >= three_half)
                return known("gamma FID region: p in (0,1/2] or [3/2,inf)");
            if (exponent_in_I(p))
                return not_fid(FidReason::ExponentInI, "gamma: edge exponent in I",
                               "p = " + p.str());
            return inconclusive("gamma parameters outside the proven regions");
        }
        case Family::InverseGamma: return known("inverse gamma: FID for every p > 0");
        case Family::Ultraspherical: {
            const Rational& p = d.p;
            if (p >= one) return known("ultraspherical FID for p >= 1");
            return not_fid(FidReason::ParamRegion, "ultraspherical not FID for p < 1",
                           "p = " + p.str());
        }
        case Family::StudentT:
            if (student_fid_range(d.q))
                return known("student t FID for q in (1/2,2] or [2n+1/4, 2n+2]");
            return inconclusive("student t parameter outside the proven ranges");
        case Family::Gaussian: return known("Gaussian is FID");
        case Family::Semicircle: return known("semicircle is FID");
        case Family::MarchenkoPastur: return known("free Poisson is FID");
        case Family::Cauchy: return known("Cauchy law is FID");
        case Family::PointMass: return known("point masses are FID");
    }
    return inconclusive("unknown family");
}

FidVerdict subordination_endpoint_test(const Dist& d, double eps0, int rungs) {
    if (d.family != Family::Beta || d.wrapped())
        throw std::invalid_argument("subordination_endpoint_test: plain beta only");
    if (!(d.p <= Rational(1)) || !(d.q <= Rational(1)))
        throw std::invalid_argument("subordination_endpoint_test: requires p,q <= 1");

    const bool uniform = d.p == Rational(1) && d.q == Rational(1);
    std::ostringstream evidence;
    for (double x0 : {0.0, 1.0}) {
        std::vector<double> eps(rungs), val(rungs);
        double e = eps0;
        bool jump_side = (x0 == 0.0 && d.p == Rational(1)) || (x0 == 1.0 && d.q == Rational(1));
        for (int k = 0; k < rungs; ++k) {
            cplx G = cauchy_G(d, {x0, e});
            val[k] = std::abs(G);
            eps[k] = e;
            e *= 0.5;
        }
        if (uniform || jump_side) {
            // density jump: |G| ~ (1/pi) log(1/eps); check the ratio settles
            double r1 = val[rungs - 1] / std::log(1.0 / eps[rungs - 1]);
            double r2 = val[rungs - 2] / std::log(1.0 / eps[rungs - 2]);
            if (!(r1 > 0.0) || std::abs(r1 - r2) > 0.08 * r1)
                throw LadderInconclusive("subordination_endpoint_test: log fit failed");
            evidence << "x0=" << x0 << ": |G| ~ " << r1 << " log(1/eps); ";
        } else {
            // power blow-up: fitted d log|G| / d log eps = exponent - 1 < 0
            double slope = (std::log(val[rungs - 1]) - std::log(val[rungs - 4])) /
                           (std::log(eps[rungs - 1]) - std::log(eps[rungs - 4]));
            if (!(slope < -0.02))
                throw LadderInconclusive("subordination_endpoint_test: no blow-up detected");
            evidence << "x0=" << x0 << ": |G| ~ eps^" << slope << "; ";
        }
    }
    FidVerdict v = not_fid(FidReason::SubordinationEndpoint,
                           "reciprocal transform vanishes at both support endpoints",
                           evidence.str());
    return v;
}

ReIm t_boundary_signs(double q, TBoundaryRegion region, double c) {
    const double B = beta_function(0.5, q - 0.5);
    switch (region) {
        case TBoundaryRegion::PosImagAxisBelowMinus1: {
            double y = c;
            if (!(y < -1.0)) throw std::invalid_argument("region needs y < -1");
            double w = std::pow(y * y - 1.0, -q);
            double re = 2.0 * kPi * std::sin(kPi * q) / B * w;
            double im_tilde = -cauchy_G(Dist::student_t(Rational::parse(std::to_string(q))),
                                        cplx(0.0, -y))
                                   .imag();
            double im = im_tilde - 2.0 * kPi * std::cos(kPi * q) / B * w;
            return {re, im};
        }
        case TBoundaryRegion::NegRealLine: {
            double x = c;
            if (!(x < 0.0)) throw std::invalid_argument("region needs x < 0");
            double w = std::pow(1.0 + x * x, -q);
            // Re of the two-sheet transform at x - i0 equals its value at x + i0
            Dist t = Dist::student_t(Rational::parse(std::to_string(q)));
            cplx g1 = cauchy_G(t, {x, 1e-6});
            cplx g2 = cauchy_G(t, {x, 5e-7});
            double re_tilde = (2.0 * g2 - g1).real();
            double re = re_tilde + 2.0 * kPi * std::sin(2.0 * kPi * q) / B * w;
            double im = kPi * (3.0 - 4.0 * std::cos(kPi * q) * std::cos(kPi * q)) / B * w;
            return {re, im};
        }
        case TBoundaryRegion::LeftImagSegment: {
            double y = c;
            if (!(y < 0.0 && y > -1.0)) throw std::invalid_argument("region needs -1 < y < 0");
            double w = std::pow(1.0 - y * y, -q);
            double re = 2.0 * kPi * std::sin(2.0 * kPi * q) / B * w;
            double im_tilde = -cauchy_G(Dist::student_t(Rational::parse(std::to_string(q))),
                                        cplx(0.0, -y))
                                   .imag();
            double im = im_tilde - 2.0 * kPi * std::cos(2.0 * kPi * q) / B * w;
            return {re, im};
        }
    }
    throw std::invalid_argument("t_boundary_signs: unknown region");
}

}  // namespace freeprob
