#pragma once

#include <string>
#include <vector>

#include "freeprob/dist.hpp"
#include "freeprob/sector.hpp"
#include "freeprob/trace.hpp"

namespace freeprob {

enum class Condition { A, B, C };

struct SubResult {
    std::string name;
    bool pass = false;
    std::string detail;
    cplx witness{0.0, 0.0};
};

struct ConditionReport {
    Condition condition;
    std::vector<SubResult> subs;
    bool pass = false;
    int samples = 0;
};

// Numeric verification of the analytic-extension conditions on the continued
// transform: (1) extension evaluates finitely on a domain grid, (2) no
// critical point carries a lower-half-plane value (via the closed-form
// critical equation and a Newton sweep), (3) boundary approach sequences have
// limits in the allowed closed region. Traced level curves, when supplied,
// form part of the domain boundary for the beta / beta prime case.
ConditionReport verify_condition(const Dist& d, Condition which,
                                 const std::vector<CurveTrace>& traces = {}, int grid_n = 40);

}  // namespace freeprob
