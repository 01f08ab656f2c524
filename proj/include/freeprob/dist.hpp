#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "freeprob/rational.hpp"

namespace freeprob {

enum class Family {
    Beta,            // x^{p-1} (1-x)^{q-1} / B(p,q) on [0,1]
    BetaPrime,       // x^{p-1} (1+x)^{-(p+q)} / B(p,q) on [0,inf)
    Gamma,           // x^{p-1} e^{-x} / Gamma(p) on [0,inf)
    InverseGamma,    // x^{-p-1} e^{-1/x} / Gamma(p) on [0,inf)
    Ultraspherical,  // (1-x^2)^{p-1/2} / (4^p B(p+1/2,p+1/2)) on [-1,1]
    StudentT,        // (1+x^2)^{-q} / B(1/2, q-1/2) on R
    Gaussian,
    Semicircle,       // sqrt(4-x^2)/(2 pi) on [-2,2]
    MarchenkoPastur,  // sqrt((4-x)/x)/(2 pi) on [0,4]
    Cauchy,
    PointMass,
};

const char* family_name(Family f);

struct Interval {
    double lo, hi;
};

// Parametric law plus an affine wrapper scale*X + shift. scale = 0 collapses
// to a point mass at shift; PointMass absorbs its wrapper into the atom.
struct Dist {
    Family family = Family::PointMass;
    Rational p{0}, q{0};  // family parameters; PointMass atom lives in p
    Rational scale{1}, shift{0};

    static Dist beta(Rational p, Rational q);
    static Dist beta_prime(Rational p, Rational q);
    static Dist gamma_dist(Rational p);
    static Dist inverse_gamma(Rational p);
    static Dist ultraspherical(Rational p);
    static Dist student_t(Rational q);
    static Dist gaussian();
    static Dist semicircle();
    static Dist marchenko_pastur();
    static Dist cauchy_dist();
    static Dist point_mass(Rational a);
    static Dist affine(const Dist& base, Rational scale, Rational shift);
    static Dist dilate(const Dist& base, Rational c) { return affine(base, c, Rational(0)); }

    // grammar: name:rational:..., wrappers dil:c:<rest> and shift:b:<rest>
    static Dist parse(const std::string& spec);
    std::string str() const;

    bool wrapped() const { return !(scale == Rational(1) && shift == Rational(0)); }
    Dist base() const;

    Interval support() const;
    bool symmetric() const;          // symmetric about 0 (wrapper included)
    bool compact_support() const;

    double density(double x) const;  // 0 outside the support
};

struct BadSpec : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

double support_distance(const Dist& d, double re, double im);

}  // namespace freeprob
