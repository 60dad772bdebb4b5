#pragma once

#include <cstddef>
#include <functional>

namespace hardykit {

/// Worker cap: min(hardware, HARDYKIT_THREADS, job count), at least 1.
int worker_count(std::size_t njobs);

/// Runs fn(0..n-1) across workers. Results must not depend on scheduling;
/// the first exception is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace hardykit
