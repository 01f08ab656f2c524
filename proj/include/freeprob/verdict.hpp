#pragma once

#include <string>

namespace freeprob {

enum class FidStatus { CertifiedNotFID, KnownFID, Inconclusive };
enum class FidReason {
    None,
    ExponentInI,
    ParamRegion,
    HankelNegative,
    SubordinationEndpoint,
    IndicatorCritical,
};

const char* fid_status_name(FidStatus s);
const char* fid_reason_name(FidReason r);

struct FidVerdict {
    FidStatus status = FidStatus::Inconclusive;
    FidReason reason = FidReason::None;
    std::string citation;   // which classification rule decided
    std::string evidence;   // free-form payload (growth rates, determinant, ...)
    int hankel_order = 0;   // first negative Hankel order when applicable
};

}  // namespace freeprob
