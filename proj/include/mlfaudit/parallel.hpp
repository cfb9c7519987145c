#pragma once

#include <cstddef>
#include <functional>

namespace mlfaudit {

/// Worker count: MLF_AUDIT_THREADS when it holds a positive integer,
/// otherwise std::thread::hardware_concurrency() (at least 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Each index
/// is visited exactly once; callers write to slot i only, so results do not
/// depend on scheduling. The exception from the lowest failing index is
/// rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace mlfaudit
