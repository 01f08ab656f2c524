#include "freeprob/batch.hpp"

#include "freeprob/fid.hpp"
#include "freeprob/parallel.hpp"
#include "freeprob/transforms.hpp"

namespace freeprob {

namespace {

EvalRecord eval_one(const Dist& d, cplx z) {
    EvalRecord rec;
    rec.z = z;
    rec.side = z.imag() > 0.0 ? "upper" : "lower_continuation";
    try {
        rec.G = z.imag() >= 0.0 || !in_continuation_domain(d, z)
                    ? cauchy_G(d, z)
                    : cauchy_G_continued(d, z).value;
        rec.F = 1.0 / rec.G;
        rec.eta = eta_transform(d, z);
    } catch (const std::exception& e) {
        rec.error = e.what();
    }
    return rec;
}

DensityRecord density_one(const Dist& d, double x) {
    DensityRecord rec;
    rec.x = x;
    try {
        DensityEstimate est = stieltjes_density(d, x);
        rec.density = est.value;
        rec.err_est = est.err_est;
    } catch (const std::exception& e) {
        rec.error = e.what();
    }
    return rec;
}

FidStatus classify_one(int i, int j, int den) {
    return region_classifier(Dist::beta(Rational(i, den), Rational(j, den))).status;
}

}  // namespace

std::vector<EvalRecord> eval_grid(const Dist& d, const std::vector<cplx>& zs) {
    return par::map_indexed<EvalRecord>(zs.size(), [&](size_t i) { return eval_one(d, zs[i]); });
}

std::vector<EvalRecord> eval_grid_serial(const Dist& d, const std::vector<cplx>& zs) {
    return par::map_indexed_serial<EvalRecord>(zs.size(),
                                               [&](size_t i) { return eval_one(d, zs[i]); });
}

std::vector<DensityRecord> density_grid(const Dist& d, double xmin, double xmax, int n) {
    double step = n > 1 ? (xmax - xmin) / (n - 1) : 0.0;
    return par::map_indexed<DensityRecord>(
        static_cast<size_t>(n), [&](size_t i) { return density_one(d, xmin + step * i); });
}

std::vector<DensityRecord> density_grid_serial(const Dist& d, double xmin, double xmax, int n) {
    double step = n > 1 ? (xmax - xmin) / (n - 1) : 0.0;
    return par::map_indexed_serial<DensityRecord>(
        static_cast<size_t>(n), [&](size_t i) { return density_one(d, xmin + step * i); });
}

std::vector<FidStatus> classify_beta_grid(int n, int den) {
    return par::map_indexed<FidStatus>(static_cast<size_t>(n) * n, [&](size_t k) {
        int i = static_cast<int>(k) / n + 1, j = static_cast<int>(k) % n + 1;
        return classify_one(i, j, den);
    });
}

std::vector<FidStatus> classify_beta_grid_serial(int n, int den) {
    return par::map_indexed_serial<FidStatus>(static_cast<size_t>(n) * n, [&](size_t k) {
        int i = static_cast<int>(k) / n + 1, j = static_cast<int>(k) % n + 1;
        return classify_one(i, j, den);
    });
}

std::vector<int> hankel_signs(const CumulantSequence& r, int k_max) {
    return par::map_indexed<int>(static_cast<size_t>(k_max), [&](size_t k) {
        return hankel_det_sign(hankel_matrix(r, static_cast<int>(k) + 1)).sign;
    });
}

std::vector<int> hankel_signs_serial(const CumulantSequence& r, int k_max) {
    return par::map_indexed_serial<int>(static_cast<size_t>(k_max), [&](size_t k) {
        return hankel_det_sign(hankel_matrix(r, static_cast<int>(k) + 1)).sign;
    });
}

std::vector<double> ode_residual_grid(const Dist& d, const std::vector<cplx>& zs) {
    return par::map_indexed<double>(zs.size(), [&](size_t i) { return ode_residual(d, zs[i]); });
}

std::vector<double> ode_residual_grid_serial(const Dist& d, const std::vector<cplx>& zs) {
    return par::map_indexed_serial<double>(zs.size(),
                                           [&](size_t i) { return ode_residual(d, zs[i]); });
}

}  // namespace freeprob
