#pragma once

#include <string>
#include <vector>

#include "freeprob/cumulants.hpp"
#include "freeprob/dist.hpp"
#include "freeprob/sector.hpp"
#include "freeprob/verdict.hpp"

namespace freeprob {

// Grid kernels: each comes in an OpenMP flavor and a serial reference used
// for testing; outputs are ordered by input index and agree bit for bit.

struct EvalRecord {
    cplx z;
    cplx G{0.0, 0.0};
    cplx F{0.0, 0.0};
    cplx eta{0.0, 0.0};
    std::string side;
    std::string error;  // empty on success
};

std::vector<EvalRecord> eval_grid(const Dist& d, const std::vector<cplx>& zs);
std::vector<EvalRecord> eval_grid_serial(const Dist& d, const std::vector<cplx>& zs);

struct DensityRecord {
    double x = 0.0;
    double density = 0.0;
    double err_est = 0.0;
    std::string error;
};

std::vector<DensityRecord> density_grid(const Dist& d, double xmin, double xmax, int n);
std::vector<DensityRecord> density_grid_serial(const Dist& d, double xmin, double xmax, int n);

// verdict status per node of the (p,q) grid p = i/den, q = j/den, 1 <= i,j <= n
std::vector<FidStatus> classify_beta_grid(int n, int den);
std::vector<FidStatus> classify_beta_grid_serial(int n, int den);

// signs of the k x k Hankel determinants, k = 1..k_max (independent, parallel)
std::vector<int> hankel_signs(const CumulantSequence& r, int k_max);
std::vector<int> hankel_signs_serial(const CumulantSequence& r, int k_max);

std::vector<double> ode_residual_grid(const Dist& d, const std::vector<cplx>& zs);
std::vector<double> ode_residual_grid_serial(const Dist& d, const std::vector<cplx>& zs);

}  // namespace freeprob
