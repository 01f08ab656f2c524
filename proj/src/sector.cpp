#include "freeprob/sector.hpp"

#include <cmath>

namespace freeprob {

cplx surface_pow(const SurfacePoint& z, double alpha) {
    double m = std::pow(z.r, alpha);
    double a = alpha * z.theta;
    return {m * std::cos(a), m * std::sin(a)};
}

cplx surface_log(const SurfacePoint& z) { return {std::log(z.r), z.theta}; }

cplx project(const SurfacePoint& z) {
    double t = z.theta - 2.0 * kPi * std::floor(z.theta / (2.0 * kPi));
    return {z.r * std::cos(t), z.r * std::sin(t)};
}

namespace {

// distance from z to the ray [0,inf)*e^{i phi}, here phi in {0, pi}
double dist_to_ray(cplx z, bool positive_axis) {
    double x = positive_axis ? z.real() : -z.real();
    double y = z.imag();
    if (x >= 0.0) return std::abs(y);
    return std::abs(z);
}

void check_cut(cplx z, bool positive_axis) {
    if (dist_to_ray(z, positive_axis) < 1e-12 * (1.0 + std::abs(z)))
        throw CutContact("principal_pow: argument on branch cut");
}

}  // namespace

cplx cut_log(cplx z, CutRay cut) {
    if (cut == CutRay::NegativeRealAxis) {
        check_cut(z, false);
        return std::log(z);
    }
    check_cut(z, true);
    double t = std::arg(z);
    if (t <= 0.0) t += 2.0 * kPi;
    return {std::log(std::abs(z)), t};
}

cplx principal_pow(cplx z, double alpha, CutRay cut) {
    if (alpha == 0.0) {
        check_cut(z, cut == CutRay::PositiveRealAxis);
        return {1.0, 0.0};
    }
    return std::exp(alpha * cut_log(z, cut));
}

}  // namespace freeprob
