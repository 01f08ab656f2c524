// Timing comparison of the OpenMP kernels against their serial references.
#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "freeprob/batch.hpp"
#include "freeprob/parallel.hpp"

using namespace freeprob;

namespace {

double now_s() {
    using clk = std::chrono::steady_clock;
    return std::chrono::duration<double>(clk::now().time_since_epoch()).count();
}

template <class Fn>
double time_it(Fn&& fn) {
    double t0 = now_s();
    fn();
    return now_s() - t0;
}

std::vector<cplx> random_upper(int n) {
    std::mt19937 rng(12321);
    std::uniform_real_distribution<double> ux(-2.5, 2.5), uy(0.2, 3.0);
    std::vector<cplx> zs;
    for (int i = 0; i < n; ++i) zs.emplace_back(ux(rng), uy(rng));
    return zs;
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-32s %10.3fs %10.3fs %8.2fx\n", name, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main() {
    std::printf("workers: %d\n", par::worker_count());
    std::printf("%-32s %11s %11s %9s\n", "kernel", "serial", "openmp", "speedup");

    {
        Dist d = Dist::beta(Rational(5, 2), Rational(3));
        auto zs = random_upper(20000);
        size_t sink = 0;
        double ts = time_it([&] { sink += eval_grid_serial(d, zs).size(); });
        double tp = time_it([&] { sink += eval_grid(d, zs).size(); });
        row("eval_grid beta (20k points)", ts, tp);
        if (sink == 0) std::printf("unexpected empty result\n");
    }
    {
        Dist d = Dist::student_t(Rational(2));
        auto zs = random_upper(4000);
        size_t sink = 0;
        double ts = time_it([&] { sink += eval_grid_serial(d, zs).size(); });
        double tp = time_it([&] { sink += eval_grid(d, zs).size(); });
        row("eval_grid student t (4k points)", ts, tp);
        if (sink == 0) std::printf("unexpected empty result\n");
    }
    {
        Dist d = Dist::beta(Rational(2), Rational(2));
        size_t sink = 0;
        double ts = time_it([&] { sink += density_grid_serial(d, 0.05, 0.95, 400).size(); });
        double tp = time_it([&] { sink += density_grid(d, 0.05, 0.95, 400).size(); });
        row("density_grid beta (400 nodes)", ts, tp);
        if (sink == 0) std::printf("unexpected empty result\n");
    }
    {
        size_t sink = 0;
        double ts = time_it([&] { sink += classify_beta_grid_serial(200, 50).size(); });
        double tp = time_it([&] { sink += classify_beta_grid(200, 50).size(); });
        row("classify_beta_grid (200x200)", ts, tp);
        if (sink == 0) std::printf("unexpected empty result\n");
    }
    {
        auto r = free_cumulants(exact_moments(Dist::gamma_dist(Rational(1)), 32));
        size_t sink = 0;
        double ts = time_it([&] { sink += hankel_signs_serial(r, 16).size(); });
        double tp = time_it([&] { sink += hankel_signs(r, 16).size(); });
        row("hankel_signs exponential k<=16", ts, tp);
        if (sink == 0) std::printf("unexpected empty result\n");
    }
    {
        Dist d = Dist::beta_prime(Rational(2), Rational(3));
        auto zs = random_upper(800);
        double sink = 0;
        double ts = time_it([&] {
            for (double v : ode_residual_grid_serial(d, zs)) sink += v;
        });
        double tp = time_it([&] {
            for (double v : ode_residual_grid(d, zs)) sink += v;
        });
        row("ode_residual_grid betaprime", ts, tp);
        if (sink == 0) std::printf("unexpected empty result\n");
    }
    return 0;
}
