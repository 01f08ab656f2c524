#include "freeprob/dist.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "freeprob/hyp2f1.hpp"

namespace freeprob {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* msg) {
    if (!ok) throw BadSpec(msg);
}
}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::Beta: return "beta";
        case Family::BetaPrime: return "betaprime";
        case Family::Gamma: return "gamma";
        case Family::InverseGamma: return "invgamma";
        case Family::Ultraspherical: return "ultra";
        case Family::StudentT: return "t";
        case Family::Gaussian: return "gauss";
        case Family::Semicircle: return "semicircle";
        case Family::MarchenkoPastur: return "mp";
        case Family::Cauchy: return "cauchy";
        case Family::PointMass: return "point";
    }
    return "?";
}

Dist Dist::beta(Rational p, Rational q) {
    require(p > Rational(0) && q > Rational(0), "beta: p,q > 0 required");
    Dist d;
    d.family = Family::Beta;
    d.p = p;
    d.q = q;
    return d;
}

Dist Dist::beta_prime(Rational p, Rational q) {
    require(p > Rational(0) && q > Rational(0), "betaprime: p,q > 0 required");
    Dist d;
    d.family = Family::BetaPrime;
    d.p = p;
    d.q = q;
    return d;
}

Dist Dist::gamma_dist(Rational p) {
    require(p > Rational(0), "gamma: p > 0 required");
    Dist d;
    d.family = Family::Gamma;
    d.p = p;
    return d;
}

Dist Dist::inverse_gamma(Rational p) {
    require(p > Rational(0), "invgamma: p > 0 required");
    Dist d;
    d.family = Family::InverseGamma;
    d.p = p;
    return d;
}

Dist Dist::ultraspherical(Rational p) {
    require(p > Rational(-1, 2), "ultra: p > -1/2 required");
    Dist d;
    d.family = Family::Ultraspherical;
    d.p = p;
    return d;
}

Dist Dist::student_t(Rational q) {
    require(q > Rational(1, 2), "t: q > 1/2 required");
    Dist d;
    d.family = Family::StudentT;
    d.q = q;
    return d;
}

Dist Dist::gaussian() {
    Dist d;
    d.family = Family::Gaussian;
    return d;
}

Dist Dist::semicircle() {
    Dist d;
    d.family = Family::Semicircle;
    return d;
}

Dist Dist::marchenko_pastur() {
    Dist d;
    d.family = Family::MarchenkoPastur;
    return d;
}

Dist Dist::cauchy_dist() {
    Dist d;
    d.family = Family::Cauchy;
    return d;
}

Dist Dist::point_mass(Rational a) {
    Dist d;
    d.family = Family::PointMass;
    d.p = a;
    return d;
}

Dist Dist::affine(const Dist& b, Rational scale, Rational shift) {
    if (scale == Rational(0)) return point_mass(shift);  // D_0 mu = delta_0, then shifted
    if (b.family == Family::PointMass) {
        Rational atom = b.scale * b.p + b.shift;
        return point_mass(scale * atom + shift);
    }
    Dist d = b;
    d.scale = scale * b.scale;
    d.shift = scale * b.shift + shift;
    return d;
}

Dist Dist::base() const {
    Dist d = *this;
    d.scale = Rational(1);
    d.shift = Rational(0);
    return d;
}

Dist Dist::parse(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    require(!parts.empty(), "empty distribution spec");

    size_t i = 0;
    auto next = [&]() -> Rational {
        require(i < parts.size(), "missing parameter in distribution spec");
        return Rational::parse(parts[i++]);
    };

    std::string name = parts[i++];
    if (name == "dil") {
        Rational c = next();
        std::string rest;
        for (size_t k = i; k < parts.size(); ++k) rest += (k > i ? ":" : "") + parts[k];
        return affine(parse(rest), c, Rational(0));
    }
    if (name == "shift") {
        Rational b = next();
        std::string rest;
        for (size_t k = i; k < parts.size(); ++k) rest += (k > i ? ":" : "") + parts[k];
        return affine(parse(rest), Rational(1), b);
    }

    Dist d;
    // sequence the two parameter reads explicitly: the evaluation order of
    // function arguments is unspecified
    if (name == "beta") {
        Rational p0 = next();
        Rational q0 = next();
        d = beta(p0, q0);
    } else if (name == "betaprime" || name == "bp") {
        Rational p0 = next();
        Rational q0 = next();
        d = beta_prime(p0, q0);
    }
    else if (name == "gamma") d = gamma_dist(next());
    else if (name == "exp") d = gamma_dist(Rational(1));
    else if (name == "invgamma") d = inverse_gamma(next());
    else if (name == "ultra") d = ultraspherical(next());
    else if (name == "t") d = student_t(next());
    else if (name == "gauss") d = gaussian();
    else if (name == "semicircle" || name == "sc") d = semicircle();
    else if (name == "mp") d = marchenko_pastur();
    else if (name == "cauchy") d = cauchy_dist();
    else if (name == "point") d = point_mass(next());
    else throw BadSpec("unknown family: " + name);
    require(i == parts.size(), "trailing tokens in distribution spec");
    return d;
}

std::string Dist::str() const {
    std::string s;
    if (shift != Rational(0)) s += "shift:" + shift.str() + ":";
    if (scale != Rational(1)) s += "dil:" + scale.str() + ":";
    s += family_name(family);
    switch (family) {
        case Family::Beta:
        case Family::BetaPrime: s += ":" + p.str() + ":" + q.str(); break;
        case Family::Gamma:
        case Family::InverseGamma:
        case Family::Ultraspherical: s += ":" + p.str(); break;
        case Family::StudentT: s += ":" + q.str(); break;
        case Family::PointMass: s += ":" + p.str(); break;
        default: break;
    }
    return s;
}

Interval Dist::support() const {
    Interval base_supp;
    switch (family) {
        case Family::Beta: base_supp = {0.0, 1.0}; break;
        case Family::BetaPrime:
        case Family::Gamma:
        case Family::InverseGamma: base_supp = {0.0, kInf}; break;
        case Family::Ultraspherical: base_supp = {-1.0, 1.0}; break;
        case Family::StudentT:
        case Family::Gaussian:
        case Family::Cauchy: base_supp = {-kInf, kInf}; break;
        case Family::Semicircle: base_supp = {-2.0, 2.0}; break;
        case Family::MarchenkoPastur: base_supp = {0.0, 4.0}; break;
        case Family::PointMass: {
            double a = p.value();
            return {a, a};
        }
    }
    double s = scale.value(), b = shift.value();
    double lo = s * base_supp.lo + b, hi = s * base_supp.hi + b;
    if (lo > hi) std::swap(lo, hi);
    return {lo, hi};
}

bool Dist::symmetric() const {
    if (shift != Rational(0)) return false;
    switch (family) {
        case Family::Ultraspherical:
        case Family::StudentT:
        case Family::Gaussian:
        case Family::Semicircle:
        case Family::Cauchy: return true;
        case Family::Beta: return false;
        case Family::PointMass: return p == Rational(0);
        default: return false;
    }
}

bool Dist::compact_support() const {
    Interval s = support();
    return std::isfinite(s.lo) && std::isfinite(s.hi);
}

double Dist::density(double x) const {
    double s = scale.value(), b = shift.value();
    if (family == Family::PointMass) return 0.0;
    double u = (x - b) / s;
    double base_val;
    double pv = p.value(), qv = q.value();
    switch (family) {
        case Family::Beta:
            base_val = (u <= 0.0 || u >= 1.0)
                           ? 0.0
                           : std::pow(u, pv - 1.0) * std::pow(1.0 - u, qv - 1.0) /
                                 beta_function(pv, qv);
            break;
        case Family::BetaPrime:
            base_val = u <= 0.0 ? 0.0
                                : std::pow(u, pv - 1.0) * std::pow(1.0 + u, -(pv + qv)) /
                                      beta_function(pv, qv);
            break;
        case Family::Gamma:
            base_val = u <= 0.0 ? 0.0 : std::pow(u, pv - 1.0) * std::exp(-u - std::lgamma(pv));
            break;
        case Family::InverseGamma:
            base_val = u <= 0.0 ? 0.0
                                : std::pow(u, -pv - 1.0) * std::exp(-1.0 / u - std::lgamma(pv));
            break;
        case Family::Ultraspherical:
            base_val = std::abs(u) >= 1.0
                           ? 0.0
                           : std::pow(1.0 - u * u, pv - 0.5) /
                                 (std::pow(4.0, pv) * beta_function(pv + 0.5, pv + 0.5));
            break;
        case Family::StudentT:
            base_val = std::pow(1.0 + u * u, -qv) / beta_function(0.5, qv - 0.5);
            break;
        case Family::Gaussian:
            base_val = std::exp(-0.5 * u * u) / std::sqrt(2.0 * 3.141592653589793238462643);
            break;
        case Family::Semicircle:
            base_val = std::abs(u) >= 2.0
                           ? 0.0
                           : std::sqrt(4.0 - u * u) / (2.0 * 3.141592653589793238462643);
            break;
        case Family::MarchenkoPastur:
            base_val = (u <= 0.0 || u >= 4.0)
                           ? 0.0
                           : std::sqrt((4.0 - u) / u) / (2.0 * 3.141592653589793238462643);
            break;
        case Family::Cauchy:
            base_val = 1.0 / (3.141592653589793238462643 * (1.0 + u * u));
            break;
        default: base_val = 0.0;
    }
    return base_val / std::abs(s);
}

double support_distance(const Dist& d, double re, double im) {
    Interval s = d.support();
    double dx = 0.0;
    if (re < s.lo) dx = s.lo - re;
    else if (re > s.hi) dx = re - s.hi;
    return std::hypot(dx, im);
}

}  // namespace freeprob
