#pragma once

#include <exception>
#include <vector>

namespace polarkit {

// Runs body(i) for i in [0, n) in parallel and rethrows the first exception
// in index order.
template <class F>
void parallel_for(long n, const F& body) {
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace polarkit
