#pragma once

namespace lrsc {

/// Thread count for parallel kernels: `requested` if positive, else the
/// OpenMP default, capped by the LRSC_THREADS environment variable.
int thread_budget(int requested = 0);

}  // namespace lrsc
