#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cstdlib>

namespace logdiff::par {

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

/// --threads wins; LOGDIFF_THREADS is the fallback; 0 keeps the runtime default.
inline int resolve_thread_request(int cli_threads) {
    if (cli_threads > 0) return cli_threads;
    if (const char* env = std::getenv("LOGDIFF_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 0;
}

}  // namespace logdiff::par
