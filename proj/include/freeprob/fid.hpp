#pragma once

#include <stdexcept>
#include <vector>

#include "freeprob/dist.hpp"
#include "freeprob/verdict.hpp"

namespace freeprob {

struct AlphaOne : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LadderInconclusive : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The exceptional exponent set I: union over n >= 1 of
// ((2n-1)/2n, 2n/(2n+1)) and ((2n+2)/(2n+1), (2n+1)/2n), inside (1/2, 3/2).
struct ExponentReport {
    double alpha = 0.0;
    bool in_I = false;
    double theta_alpha = 0.0;  // (1/|alpha-1| - 1) * pi
    int interval_n = 0;        // component index when in_I
    bool lower_family = false; // alpha < 1 component vs its mirror
};

ExponentReport classify_exponent(double alpha);
bool exponent_in_I(const Rational& alpha);  // exact membership for rational alpha

// Decides FID membership from the proven parameter regions; conjectured
// regions are never asserted and come back Inconclusive.
FidVerdict region_classifier(const Dist& d);

// For beta with 0 < p,q <= 1: verifies that the reciprocal transform vanishes
// at both support endpoints along a shrinking imaginary ladder.
FidVerdict subordination_endpoint_test(const Dist& d, double eps0 = 1e-3, int rungs = 10);

enum class TBoundaryRegion {
    PosImagAxisBelowMinus1,  // z = +0 + iy, y < -1
    NegRealLine,             // z = x - i0, x < 0
    LeftImagSegment,         // z = -0 + iy, -1 < y < 0
};

struct ReIm {
    double re, im;
};

// Closed-form one-sided boundary values of the continued Student t transform.
ReIm t_boundary_signs(double q, TBoundaryRegion region, double y_or_x);

}  // namespace freeprob
