#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace kkscatter::detail {

// Runs body(i) for i in [0, count) across OpenMP threads. Exceptions cannot
// cross the parallel region, so the first one (by index) is captured and
// rethrown after the loop.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace kkscatter::detail
