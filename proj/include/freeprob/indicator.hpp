#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "freeprob/dist.hpp"

namespace freeprob {

struct RangeExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IndicatorProbe {
    bool monotone_f = false;
    bool has_critical = false;
    double y0 = 0.0;  // critical point of f_t
    double y1 = 0.0;  // f_t(y0); y1 > 0 is the non-FID witness for the power
};

// f(y) = (1/i) F(iy) along the imaginary axis of the continued transform.
// Defined for the symmetric families: Gaussian (all of R), Student t with
// q > 1 (y > -1), ultraspherical with p >= 1 (all of R).
double axis_f(const Dist& d, double y);

// Probes the Boolean convolution power via f_t(y) = (1-t) y + t f(y). For
// t > 1 a critical point y0 with y1 = f_t(y0) > 0 certifies the power not FID.
IndicatorProbe indicator_probe(const Dist& d, double t, double y_lo, double y_hi);
IndicatorProbe indicator_probe(const Dist& d, double t);

// max over the grid of |f'(y) - (f(y)^2 - y f(y))| for the Gaussian
double gaussian_ode_check(const std::vector<double>& y_grid);

}  // namespace freeprob
