#ifndef COMBITAG_PARALLEL_HPP
#define COMBITAG_PARALLEL_HPP

#include <cstddef>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace combitag {

// Every batch kernel (corpus tagging, per-row combination, sweeps) exists in
// two modes: a serial reference loop and an OpenMP loop over independent
// items. Outputs are written by index, so both modes produce bit-identical
// results; tests assert that equivalence and the bench tool times it.
enum class Exec { serial, parallel };

template <typename F>
void for_each_index(Exec exec, std::size_t n, F&& body) {
#ifdef _OPENMP
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
      body(static_cast<std::size_t>(i));
    }
    return;
  }
#else
  (void)exec;
#endif
  for (std::size_t i = 0; i < n; ++i) body(i);
}

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

} // namespace combitag

#endif
