#pragma once

#include <cstddef>
#include <functional>

namespace tsko::pipeline {

/// Runs task(0) ... task(count - 1) on at most `threads` workers. Each index
/// runs exactly once. If tasks throw, the exception of the lowest failing
/// index is rethrown after every worker has stopped.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& task);

/// Parallelism from the TSKO_THREADS environment variable, else the number of
/// hardware threads (at least 1).
int default_threads();

} // namespace tsko::pipeline
