#pragma once

#include <cstddef>
#include <functional>

namespace lambda2 {

/// Worker count: LAMBDA2_JOBS if set, otherwise the hardware concurrency.
unsigned default_jobs();

/// Calls fn(i) for every i in [0, n) on up to `jobs` threads (0 picks
/// default_jobs()). Callers write results by index, so the outcome does not
/// depend on scheduling. The first exception thrown by a job is rethrown once
/// every worker has stopped.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

} // namespace lambda2
