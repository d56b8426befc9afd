#pragma once

#include <cstddef>
#include <functional>

namespace spectral_gibbs {

/// Worker pool size: hardware concurrency, capped by SPECTRAL_GIBBS_THREADS.
std::size_t worker_count();

/// Runs body(0..tasks-1) on up to worker_count() threads. Tasks are claimed
/// in index order; the first exception thrown by any task is rethrown.
void parallel_for(std::size_t tasks, const std::function<void(std::size_t)>& body);

}  // namespace spectral_gibbs
