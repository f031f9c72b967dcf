#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace latefuse {

/// Worker count for a `num_threads` clause: the requested count, or the
/// OpenMP default when jobs <= 0. Serial builds always run one worker.
inline int resolve_jobs(int jobs) {
#ifdef _OPENMP
    return jobs > 0 ? jobs : omp_get_max_threads();
#else
    (void)jobs;
    return 1;
#endif
}

}  // namespace latefuse
