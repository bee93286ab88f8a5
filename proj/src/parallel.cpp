#include "lrsc/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace lrsc {

int thread_budget(int requested) {
  int n = requested > 0 ? requested : omp_get_max_threads();
  if (const char* env = std::getenv("LRSC_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0 && cap < n) n = cap;
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return n < 1 ? 1 : n;
}

}  // namespace lrsc
