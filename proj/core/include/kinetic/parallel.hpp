#pragma once

#include <cstddef>
#include <functional>

namespace kinetic {

/// Number of worker threads used by parallel loops. Defaults to the number of
/// hardware threads. Results never depend on this value: every parallel loop
/// writes disjoint outputs and reductions happen afterwards in index order.
/// Zero restores the default.
void set_worker_count(unsigned n);
unsigned worker_count();

/// Runs body(i) for i in [0, n), statically partitioned over the workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace kinetic
