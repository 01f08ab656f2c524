#include "freeprob/cumulants.hpp"

#include <algorithm>
#include <sstream>

namespace freeprob {

const char* fid_status_name(FidStatus s) {
    switch (s) {
        case FidStatus::CertifiedNotFID: return "CertifiedNotFID";
        case FidStatus::KnownFID: return "KnownFID";
        case FidStatus::Inconclusive: return "Inconclusive";
    }
    return "?";
}

const char* fid_reason_name(FidReason r) {
    switch (r) {
        case FidReason::None: return "none";
        case FidReason::ExponentInI: return "exponent_in_I";
        case FidReason::ParamRegion: return "param_region";
        case FidReason::HankelNegative: return "hankel_negative";
        case FidReason::SubordinationEndpoint: return "subordination_endpoint";
        case FidReason::IndicatorCritical: return "indicator_critical";
    }
    return "?";
}

BigRat to_bigrat(const Rational& r) {
    BigRat v(static_cast<long>(r.num), static_cast<long>(r.den));
    v.canonicalize();
    return v;
}

const BigRat& MomentSequence::m(int n) const {
    if (n < 1 || n > horizon) throw MomentHorizonExceeded("moment index out of range");
    return values[static_cast<size_t>(n) - 1];
}

const BigRat& CumulantSequence::r(int n) const {
    if (n < 1 || n > static_cast<int>(values.size()))
        throw HorizonExceeded("cumulant index out of range");
    return values[static_cast<size_t>(n) - 1];
}

namespace {

BigRat pochhammer(const BigRat& a, int n) {
    BigRat prod(1);
    for (int k = 0; k < n; ++k) prod *= a + k;
    return prod;
}

std::vector<BigRat> base_moments(const Dist& d, int n_max) {
    std::vector<BigRat> m(static_cast<size_t>(n_max));
    BigRat p = to_bigrat(d.p), q = to_bigrat(d.q);
    switch (d.family) {
        case Family::Beta:
            for (int n = 1; n <= n_max; ++n)
                m[n - 1] = pochhammer(p, n) / pochhammer(p + q, n);
            return m;
        case Family::BetaPrime: {
            if (!(Rational(n_max) < d.q))
                throw MomentHorizonExceeded("beta prime: moments exist only for n < q");
            for (int n = 1; n <= n_max; ++n) {
                BigRat den(1);
                for (int k = 1; k <= n; ++k) den *= q - k;
                m[n - 1] = pochhammer(p, n) / den;
            }
            return m;
        }
        case Family::Gamma:
            for (int n = 1; n <= n_max; ++n) m[n - 1] = pochhammer(p, n);
            return m;
        case Family::Semicircle: {
            // even moments are the Catalan numbers
            BigInt cat(1);
            for (int n = 1; n <= n_max; ++n) {
                if (n % 2 == 1) {
                    m[n - 1] = 0;
                } else {
                    int k = n / 2;
                    // C_k = binom(2k, k)/(k+1)
                    BigInt num(1), den(1);
                    for (int j = 1; j <= k; ++j) {
                        num *= k + j;
                        den *= j;
                    }
                    cat = num / den / (k + 1);
                    m[n - 1] = BigRat(cat);
                }
            }
            return m;
        }
        case Family::MarchenkoPastur: {
            // free Poisson: all free cumulants equal 1
            std::vector<BigRat> r(static_cast<size_t>(n_max), BigRat(1));
            return moments_from_free_cumulants(r);
        }
        case Family::PointMass: {
            BigRat a = to_bigrat(d.p), pw(1);
            for (int n = 1; n <= n_max; ++n) {
                pw *= a;
                m[n - 1] = pw;
            }
            return m;
        }
        default:
            throw MomentHorizonExceeded(std::string("exact moments unavailable for family ") +
                                        family_name(d.family));
    }
}

BigInt binom(int n, int k) {
    BigInt num(1), den(1);
    for (int j = 1; j <= k; ++j) {
        num *= n - k + j;
        den *= j;
    }
    return num / den;
}

}  // namespace

MomentSequence exact_moments(const Dist& d, int n_max) {
    MomentSequence seq;
    seq.dist = d;
    seq.horizon = n_max;
    std::vector<BigRat> base = base_moments(d.base(), n_max);
    if (!d.wrapped()) {
        seq.values = std::move(base);
    } else {
        // moments of s X + b by the binomial expansion, all exact
        BigRat s = to_bigrat(d.scale), b = to_bigrat(d.shift);
        seq.values.assign(static_cast<size_t>(n_max), BigRat(0));
        for (int n = 1; n <= n_max; ++n) {
            BigRat sum = BigRat(0);
            BigRat bpow(1);  // b^{n-k} built backwards below
            for (int k = 0; k <= n; ++k) {
                BigRat mk = k == 0 ? BigRat(1) : base[k - 1];
                BigRat spow(1), bp(1);
                for (int j = 0; j < k; ++j) spow *= s;
                for (int j = 0; j < n - k; ++j) bp *= b;
                sum += BigRat(binom(n, k)) * spow * bp * mk;
            }
            seq.values[n - 1] = sum;
        }
    }
    if (d.base().family == Family::BetaPrime)
        seq.validity_note = "moments valid for n < q";
    return seq;
}

CumulantSequence free_cumulants(const MomentSequence& mseq) {
    const int N = mseq.horizon;
    // table of coefficients C[s][m] = [x^m] M(x)^s with M(x) = 1 + sum m_n x^n
    std::vector<std::vector<BigRat>> C(static_cast<size_t>(N) + 1);
    C[0].assign(static_cast<size_t>(N) + 1, BigRat(0));
    C[0][0] = 1;
    std::vector<BigRat> mfull(static_cast<size_t>(N) + 1, BigRat(1));
    for (int n = 1; n <= N; ++n) mfull[n] = mseq.values[n - 1];
    for (int s = 1; s <= N; ++s) {
        C[s].assign(static_cast<size_t>(N) + 1, BigRat(0));
        for (int m = 0; m + s <= N; ++m) {
            BigRat sum(0);
            for (int j = 0; j <= m; ++j) sum += C[s - 1][j] * mfull[m - j];
            C[s][m] = sum;
        }
    }
    CumulantSequence out;
    out.values.assign(static_cast<size_t>(N), BigRat(0));
    for (int n = 1; n <= N; ++n) {
        BigRat acc = mfull[n];
        for (int s = 1; s < n; ++s) acc -= out.values[s - 1] * C[s][n - s];
        out.values[n - 1] = acc;  // coefficient of r_n is C[n][0] = 1
    }
    return out;
}

std::vector<BigRat> moments_from_free_cumulants(const std::vector<BigRat>& r) {
    const int N = static_cast<int>(r.size());
    std::vector<BigRat> m(static_cast<size_t>(N), BigRat(0));
    // forward recursion: m_n = sum_s r_s [x^{n-s}] M(x)^s, building M degree by degree
    std::vector<std::vector<BigRat>> C(static_cast<size_t>(N) + 1);
    for (auto& row : C) row.assign(static_cast<size_t>(N) + 1, BigRat(0));
    C[0][0] = 1;
    std::vector<BigRat> mfull(static_cast<size_t>(N) + 1, BigRat(0));
    mfull[0] = 1;
    for (int n = 1; n <= N; ++n) {
        // extend C[s][m] for m = n - s using moments below n (already known)
        for (int s = 1; s <= n; ++s) {
            BigRat sum(0);
            for (int j = 0; j <= n - s; ++j) sum += C[s - 1][j] * mfull[n - s - j];
            C[s][n - s] = sum;
        }
        BigRat acc(0);
        for (int s = 1; s <= n; ++s) acc += r[s - 1] * C[s][n - s];
        m[n - 1] = acc;
        mfull[n] = acc;
    }
    return m;
}

RatMatrix hankel_matrix(const CumulantSequence& r, int k) {
    if (r.horizon() < 2 * k) throw HorizonExceeded("hankel_matrix: need cumulants to r_{2k}");
    RatMatrix H(static_cast<size_t>(k), std::vector<BigRat>(static_cast<size_t>(k)));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) H[i][j] = r.r(2 + i + j);
    return H;
}

HankelReport hankel_det_sign(const RatMatrix& H) {
    const int n = static_cast<int>(H.size());
    HankelReport rep;
    rep.order = n;
    {
        std::ostringstream os;
        os << n << "x" << n << " Hankel of shifted free cumulants (r_2..r_" << 2 * n << ")";
        rep.matrix_spec = os.str();
    }
    if (n == 0) {
        rep.sign = 1;
        rep.determinant = 1;
        return rep;
    }
    // clear denominators row by row; the row multipliers are positive
    std::vector<std::vector<BigInt>> M(static_cast<size_t>(n), std::vector<BigInt>(n));
    BigInt scale_total(1);
    for (int i = 0; i < n; ++i) {
        BigInt l(1);
        for (int j = 0; j < n; ++j) l = lcm(l, H[i][j].get_den());
        for (int j = 0; j < n; ++j) {
            BigRat v = H[i][j] * BigRat(l);
            v.canonicalize();
            M[i][j] = v.get_num();
        }
        scale_total *= l;
    }
    int sign_flips = 1;
    BigInt prev(1);
    for (int k = 0; k < n - 1; ++k) {
        if (M[k][k] == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (M[i][k] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) {
                rep.sign = 0;
                rep.determinant = 0;
                return rep;
            }
            std::swap(M[k], M[piv]);
            sign_flips = -sign_flips;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                BigInt t = M[i][j] * M[k][k] - M[i][k] * M[k][j];
                mpz_divexact(M[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            M[i][k] = 0;
        }
        prev = M[k][k];
    }
    BigInt det_scaled = M[n - 1][n - 1] * sign_flips;
    rep.determinant = BigRat(det_scaled) / BigRat(scale_total);
    rep.determinant.canonicalize();
    int s = sgn(rep.determinant);
    rep.sign = s;
    return rep;
}

FidVerdict hankel_fid_test(const Dist& d, int k_max) {
    MomentSequence m = exact_moments(d, 2 * k_max);
    CumulantSequence r = free_cumulants(m);
    for (int k = 1; k <= k_max; ++k) {
        HankelReport rep = hankel_det_sign(hankel_matrix(r, k));
        if (rep.sign < 0) {
            FidVerdict v;
            v.status = FidStatus::CertifiedNotFID;
            v.reason = FidReason::HankelNegative;
            v.hankel_order = k;
            std::ostringstream os;
            os << "det(H_" << k << ") = " << rep.determinant << " < 0";
            v.evidence = os.str();
            v.citation = "negative Hankel determinant of shifted free cumulants";
            return v;
        }
    }
    FidVerdict v;
    v.status = FidStatus::Inconclusive;
    v.evidence = "no negative Hankel determinant up to order " + std::to_string(k_max);
    return v;
}

}  // namespace freeprob
