#pragma once

#include <cstdlib>
#include <vector>

#ifdef FREEPROB_HAVE_OPENMP
#include <omp.h>
#endif

namespace freeprob::par {

inline int worker_count() {
#ifdef FREEPROB_HAVE_OPENMP
    if (const char* env = std::getenv("FREEPROB_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// out[i] = fn(i); element order is the index order, so results are identical
// to the serial reference bit for bit
template <class T, class Fn>
std::vector<T> map_indexed_serial(std::size_t n, Fn&& fn) {
    std::vector<T> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
}

template <class T, class Fn>
std::vector<T> map_indexed(std::size_t n, Fn&& fn) {
#ifdef FREEPROB_HAVE_OPENMP
    std::vector<T> out(n);
    const int workers = worker_count();
#pragma omp parallel for schedule(dynamic, 4) num_threads(workers)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    return out;
#else
    return map_indexed_serial<T>(n, std::forward<Fn>(fn));
#endif
}

}  // namespace freeprob::par
