#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace egelab {

/// Worker count: EGE_LAB_THREADS if set and positive, else hardware concurrency.
[[nodiscard]] unsigned worker_count();

/// Calls body(i) for i in [0, count) across worker threads. Indices are handed out in
/// contiguous chunks; the first exception thrown is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Per-index map; result order is the index order regardless of scheduling.
template <class T, class F>
std::vector<T> parallel_map(std::size_t count, F&& f) {
  std::vector<T> out(count);
  parallel_for(count, [&](std::size_t i) { out[i] = f(i); });
  return out;
}

}  // namespace egelab
