#pragma once

#include <cstddef>
#include <functional>

namespace scat {

/// Worker count from SCATLAB_THREADS, 1 when unset or invalid.
std::size_t worker_count();

/// Runs fn(i) for i in [0, n) on worker_count() threads. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace scat
