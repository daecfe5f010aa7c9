#include "tfq/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tfq {

int thread_limit() {
#ifdef _OPENMP
    int cap = omp_get_max_threads();
#else
    int cap = 1;
#endif
    if (const char* env = std::getenv("TF_THREADS")) {
        try {
            int req = std::stoi(env);
            if (req >= 1) cap = std::min(cap, req);
        } catch (...) {
            // ignore malformed values, keep the default
        }
    }
    return cap;
}

int configure_threads() {
    int cap = thread_limit();
#ifdef _OPENMP
    omp_set_num_threads(cap);
#endif
    return cap;
}

}  // namespace tfq
