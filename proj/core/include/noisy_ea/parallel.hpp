#pragma once

#include <cstddef>
#include <functional>

namespace noisy_ea {

/// Worker count: NOISY_EA_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
std::size_t worker_count();

/// Calls task(i) for every i in [0, count) on up to `workers` threads.
/// Tasks must write only to state owned by their index. The first exception
/// thrown by a task is rethrown after all workers have stopped.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task,
                  std::size_t workers = worker_count());

}  // namespace noisy_ea
