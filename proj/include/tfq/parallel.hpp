// TF_THREADS caps the OpenMP thread count (default: machine cores).
#pragma once

namespace tfq {

// Reads TF_THREADS and applies it to the OpenMP runtime. Returns the cap.
int configure_threads();

// Current cap without touching the runtime.
int thread_limit();

}  // namespace tfq
