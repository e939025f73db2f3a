#pragma once

// Data-parallel maps over sample indices. map_serial is the reference;
// map_omp must produce the same per-index results. Reductions are done
// afterwards in a fixed order, so totals do not depend on the thread count.

#include <cstddef>
#include <exception>
#include <limits>
#include <vector>

#include <omp.h>

namespace distgeom {

enum class Exec { serial, parallel };

namespace kernels {

template <class F>
auto map_serial(std::size_t n, F&& f) {
  using R = decltype(f(std::size_t{0}));
  std::vector<R> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(f(i));
  return out;
}

/// Parallel map. If any index throws, the exception of the lowest failing
/// index is rethrown, matching what the serial map would report.
template <class F>
auto map_omp(std::size_t n, F&& f) {
  using R = decltype(f(std::size_t{0}));
  std::vector<R> out(n);
  std::exception_ptr err;
  std::size_t err_index = std::numeric_limits<std::size_t>::max();
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(distgeom_map_error)
      if (static_cast<std::size_t>(i) < err_index) {
        err_index = static_cast<std::size_t>(i);
        err = std::current_exception();
      }
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

template <class F>
auto map(Exec exec, std::size_t n, F&& f) {
  return exec == Exec::serial ? map_serial(n, f) : map_omp(n, f);
}

/// Pairwise (cascade) summation in index order.
double pairwise_sum(const double* a, std::size_t n);
inline double pairwise_sum(const std::vector<double>& a) { return pairwise_sum(a.data(), a.size()); }

}  // namespace kernels
}  // namespace distgeom
