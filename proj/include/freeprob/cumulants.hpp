#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "freeprob/dist.hpp"
#include "freeprob/verdict.hpp"

namespace freeprob {

using BigRat = mpq_class;
using BigInt = mpz_class;

BigRat to_bigrat(const Rational& r);

struct MomentHorizonExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct HorizonExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// m_1..m_N, exact; m_0 = 1 implicit. For beta prime the horizon must stay
// strictly below q or the moments diverge.
struct MomentSequence {
    Dist dist;
    std::vector<BigRat> values;
    int horizon = 0;
    std::string validity_note;

    const BigRat& m(int n) const;  // 1-based; m(0) would be 1
};

struct CumulantSequence {
    std::vector<BigRat> values;  // r_1..r_N

    const BigRat& r(int n) const;
    int horizon() const { return static_cast<int>(values.size()); }
};

// Families with exact rational moments: beta, beta prime, gamma (incl. the
// exponential p=1), semicircle, Marchenko-Pastur, point mass; affine wrappers
// with rational scale/shift are folded in by the binomial expansion.
MomentSequence exact_moments(const Dist& d, int n_max);

// moment -> free cumulant conversion by the first-block recursion, exact
CumulantSequence free_cumulants(const MomentSequence& m);

// inverse direction, used for exact round-trip checks and the free Poisson
std::vector<BigRat> moments_from_free_cumulants(const std::vector<BigRat>& r);

using RatMatrix = std::vector<std::vector<BigRat>>;

// k x k matrix H[i][j] = r_{2+i+j} (0-indexed), rows r_2..r_{k+1} through
// r_{k+1}..r_{2k}; needs cumulants up to r_{2k}.
RatMatrix hankel_matrix(const CumulantSequence& r, int k);

struct HankelReport {
    int order = 0;
    int sign = 0;  // -1, 0, +1
    BigRat determinant;
    std::string matrix_spec;
};

// exact determinant by fraction-free (Bareiss) elimination with row pivoting
HankelReport hankel_det_sign(const RatMatrix& H);

// scan k = 1..k_max; the first negative determinant certifies non-FID
FidVerdict hankel_fid_test(const Dist& d, int k_max);

}  // namespace freeprob
