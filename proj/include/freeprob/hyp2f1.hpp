#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace freeprob {

using cplx = std::complex<double>;

struct HypParams {
    double a, b, c;
};

enum class HypRoute {
    Series,
    Euler15_3_3,
    Pfaff,
    Recip15_3_7,
    OneMinusRecip15_3_9,
    PerturbedLimit,
    IntegralFallback,
};

const char* hyp_route_name(HypRoute r);

struct EvalReport {
    cplx value;
    HypRoute route;
    double est_error;
};

struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoRoute : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RouteInadmissible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Maclaurin series; caller must keep |z| inside the convergence disc
// (the router guarantees |z| <= 0.8, soft-relaxed to 0.97).
cplx f21_series(const HypParams& p, cplx z);

// Euler integral representation over (0,1); requires c > b > 0, z off [1,inf).
// Absolute error target abs_tol; serves as the independent oracle for all routes.
cplx f21_integral(const HypParams& p, cplx z, double abs_tol = 1e-12);

// Degenerate-parameter limit: evaluates at shifted parameters and Richardson-
// extrapolates the shift away. Accuracy ~1e-10.
cplx f21_perturbed(const HypParams& p, cplx z);

// Full-plane evaluation on C \ [1,inf) via argument transformations
// (A&S 15.3.3 / 15.3.7 / 15.3.9 and the Pfaff map).
EvalReport f21(const HypParams& p, cplx z);

// Forces a specific route; throws RouteInadmissible when it does not apply.
cplx f21_route(const HypParams& p, cplx z, HypRoute route);

// log|Gamma(x)| with sign, reflection handles x < 0; pole flags x in {0,-1,-2,...}.
struct GammaLog {
    double log_abs;
    int sign;   // +1 or -1; 0 at a pole
    bool pole;
};
GammaLog gamma_log(double x);

// Real Gamma-factor products Prod Gamma(num_i) / Prod Gamma(den_j).
// A numerator pole makes the result infinite; a denominator pole makes it 0.
struct GammaRatio {
    double value;
    bool infinite;
};
GammaRatio gamma_ratio(std::initializer_list<double> num, std::initializer_list<double> den);

double beta_function(double p, double q);

}  // namespace freeprob
