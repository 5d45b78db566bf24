#pragma once

#include <cstddef>
#include <functional>

namespace hambvp {

// Hardware concurrency, or HAMBVP_WORKERS when set.
int default_workers();

// Calls fn(i) for i in [0, n) on up to `workers` threads (0: default_workers()).
// The first exception thrown by any call is rethrown after all threads join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int workers = 0);

}  // namespace hambvp
