#pragma once

#include <cstddef>
#include <functional>

namespace pf {

/// Runs `task(i)` for every i in [0, n) on up to `workers` threads. The first
/// exception thrown by any task is rethrown after all threads join.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& task);

/// `requested`, or the hardware thread count when `requested` is 0.
std::size_t resolve_workers(std::size_t requested);

}  // namespace pf
