#pragma once

#include <complex>
#include <functional>

namespace freeprob {

using cplx = std::complex<double>;

struct QuadOut {
    cplx value{0.0, 0.0};
    double abs_err = 0.0;
    int levels = 0;
};

// Integrand over (a,b) receives (x, x-a, b-x); the endpoint distances are
// computed without cancellation so x^{p-1}(1-x)^{q-1}-type singularities
// can be evaluated accurately near the ends.
using FiniteIntegrand = std::function<cplx(double x, double dl, double dr)>;

// Integrand over (0,inf) receives x only (small x is exact by construction).
using HalfLineIntegrand = std::function<cplx(double x)>;

// Double-exponential (tanh-sinh) rule; handles integrable endpoint singularities.
QuadOut integrate_finite(const FiniteIntegrand& f, double a, double b, double abs_tol);

// exp-sinh rule on (0,inf); needs only polynomial decay of x*f(x).
QuadOut integrate_halfline(const HalfLineIntegrand& f, double abs_tol);

// Whole line, split at 0 into two half-line integrals.
QuadOut integrate_real_line(const HalfLineIntegrand& f_pos, const HalfLineIntegrand& f_neg,
                            double abs_tol);

}  // namespace freeprob
