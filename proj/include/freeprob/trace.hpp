#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "freeprob/dist.hpp"
#include "freeprob/sector.hpp"

namespace freeprob {

enum class Anchor { AtZero, AtOne, AtMinusOne, AtInfinity };
enum class EndState { ReachedInfinity, ReachedPoint, Stalled };

const char* anchor_name(Anchor a);
const char* end_state_name(EndState e);

struct SeedFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StallError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CurveTrace {
    std::vector<cplx> points;
    std::vector<double> g_values;  // real G along the curve, strictly monotone
    Anchor start_anchor;
    EndState end_state = EndState::Stalled;
    cplx end_point{0.0, 0.0};  // set for ReachedPoint
    double end_radius = 0.0;   // set for ReachedInfinity
    std::string note;
};

struct TraceOptions {
    double trace_tol = 1e-9;   // |Im G| <= trace_tol * max(1, |Re G|) per point
    double r_max = 1e3;        // |z| beyond this counts as infinity
    double snap = 1e-4;        // endpoint capture radius around 0, 1, -1
    double seed_radius = 1e-8; // first point sits this close to a finite anchor
    double seed_radius_inf = 50.0;
    int max_steps = 20000;
    double g_cap = 1e306;
};

// Predictor-corrector tracing of the level set Im G = 0 inside the
// continuation domain, marching the real value g = G(z) monotonically away
// from the anchor. Supported: beta (AtZero/AtOne), beta prime
// (AtZero/AtInfinity), parameters with p (resp. q) in (0,1/2) or (3/2,inf).
CurveTrace trace_real_level_curve(const Dist& d, Anchor anchor, const TraceOptions& opt = {});

}  // namespace freeprob
