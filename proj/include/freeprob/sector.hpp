#pragma once

#include <complex>
#include <limits>
#include <stdexcept>

namespace freeprob {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Point on the helix surface: modulus r > 0 and unbounded argument theta.
// The sheet index n = floor(theta / 2pi) is derived, never stored.
struct SurfacePoint {
    double r;
    double theta;

    SurfacePoint(double r_, double theta_) : r(r_), theta(theta_) {
        if (!(r > 0.0) || !std::isfinite(r) || !std::isfinite(theta))
            throw std::invalid_argument("SurfacePoint: need finite r > 0, finite theta");
    }
    int sheet() const { return static_cast<int>(std::floor(theta / (2.0 * kPi))); }
};

// Sector {arg z in (theta_lo, theta_hi), 0 < |z| < radius} on the surface.
struct SectorSpec {
    double theta_lo;
    double theta_hi;
    double radius = std::numeric_limits<double>::infinity();

    SectorSpec(double lo, double hi, double rad = std::numeric_limits<double>::infinity())
        : theta_lo(lo), theta_hi(hi), radius(rad) {
        if (!(lo < hi)) throw std::invalid_argument("SectorSpec: theta_lo < theta_hi required");
    }
    bool contains(const SurfacePoint& z) const {
        return z.theta > theta_lo && z.theta < theta_hi && z.r < radius;
    }
};

// Truncated cone {Im z > m, |Re z| < lambda * Im z} in the upper half-plane.
struct ConeSpec {
    double lambda = 1.0;
    double m = 1.0;

    ConeSpec() = default;
    ConeSpec(double lambda_, double m_) : lambda(lambda_), m(m_) {
        if (!(lambda > 0.0) || !(m > 0.0)) throw std::invalid_argument("ConeSpec: lambda, m > 0");
    }
    bool contains(cplx z) const { return z.imag() > m && std::abs(z.real()) < lambda * z.imag(); }
};

// z^alpha = r^alpha e^{i alpha theta}; continuous in theta across sheet boundaries.
cplx surface_pow(const SurfacePoint& z, double alpha);

// log z = log r + i theta on the surface.
cplx surface_log(const SurfacePoint& z);

// Projection to C\{0}: argument reduced into [0, 2pi) by subtracting the sheet offset.
cplx project(const SurfacePoint& z);

enum class CutRay {
    NegativeRealAxis,  // arg in (-pi, pi): the principal branch
    PositiveRealAxis,  // arg in (0, 2pi)
};

struct CutContact : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Branch of z^alpha continuous on C minus the chosen cut ray.
// Throws CutContact when dist(z, cut) < 1e-12 * (1 + |z|).
cplx principal_pow(cplx z, double alpha, CutRay cut = CutRay::NegativeRealAxis);

// Branch of log z with the same cut conventions.
cplx cut_log(cplx z, CutRay cut = CutRay::NegativeRealAxis);

}  // namespace freeprob
