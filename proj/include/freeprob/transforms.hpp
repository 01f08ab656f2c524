#pragma once

#include <complex>
#include <functional>
#include <stdexcept>

#include "freeprob/dist.hpp"
#include "freeprob/sector.hpp"

namespace freeprob {

enum class Side { UpperPlane, LowerContinuation, SurfaceSheet };

struct TransformValue {
    cplx value;
    Side side;
    int sheet = 0;
};

struct UnsupportedFamily : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NearSupport : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PoleOfF : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OutsideDomain : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonconvergentLadder : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two-sheet Cauchy transform on C\supp: hypergeometric / closed-form routes,
// quadrature for Gaussian and the gamma families. Real arguments must lie off
// the closed support.
cplx cauchy_G(const Dist& d, cplx z);

// Independent quadrature oracle; throws NearSupport within 1e-6 of the support.
cplx cauchy_G_quad(const Dist& d, cplx z, double abs_tol = 1e-11);

// Analytic continuation across the support: beta on C\((-inf,0] u [1,inf)),
// beta prime and gamma on C\(-inf,0], Student t on (C- u H+)\i[-1,0],
// ultraspherical on C\((-inf,-1] u [1,inf)), Gaussian on C.
TransformValue cauchy_G_continued(const Dist& d, cplx z);
bool in_continuation_domain(const Dist& d, cplx z);

// d/dz of the continued transform from the family's first-order ODE.
cplx cauchy_G_derivative(const Dist& d, cplx z, cplx G_at_z);
cplx cauchy_G_derivative(const Dist& d, cplx z);

cplx reciprocal_F(const Dist& d, cplx z);

// eta(z) = 1 - z F(1/z)
cplx eta_transform(const Dist& d, cplx z);

// phi(z) = F^{-1}(z) - z by Newton inversion seeded at w0 = z.
cplx voiculescu_phi(const Dist& d, cplx z, double tol = 1e-12);

// truncated cone where the inversion is guaranteed: lambda = 1 and
// M = 10 (1 + stddev proxy), the proxy from exact moments when available
ConeSpec default_cone(const Dist& d);

// checked variant: throws OutsideDomain when z is not in the cone
cplx voiculescu_phi(const Dist& d, cplx z, const ConeSpec& cone, double tol);

struct DensityEstimate {
    double value;
    double err_est;
};
// Stieltjes inversion: -(1/pi) Im G(x+iy) extrapolated down the y-ladder.
DensityEstimate stieltjes_density(const Dist& d, double x, double y0 = 1e-2, int rungs = 9);

using Evaluator = std::function<cplx(cplx)>;

// Boolean convolution power: F_t(z) = (1-t) z + t F(z)
Evaluator boolean_power_F(const Dist& d, double t);

// composition F1 o F2 (monotone convolution of the reciprocal transforms)
Evaluator monotone_convolve_F(const Evaluator& F1, const Evaluator& F2);
Evaluator reciprocal_F_evaluator(const Dist& d);
Evaluator eta_evaluator(const Dist& d);

// G of the free additive convolution with the standard semicircle, computed
// by the damped subordination fixed point G = G_d(z - G).
cplx semicircle_free_convolve_G(const Dist& d, cplx z);

// max residual of the family's first-order ODE system at z (derivative taken
// by Richardson finite differences, independent of the closed-form rhs)
double ode_residual(const Dist& d, cplx z);

enum class RvRule { BetaToBetaPrime, GammaInverse, UltrasphericalAffine, StudentSquare };

// residual of the random-variable transform identity instantiated on families
double rv_transform_check(RvRule rule, Rational p, Rational q, cplx z);

// 4th-order Richardson central difference of an analytic evaluator
cplx numeric_derivative(const std::function<cplx(cplx)>& f, cplx z, double h);

}  // namespace freeprob
