#pragma once

#include <cstddef>
#include <functional>

namespace hankelet {

// Worker cap: HANKELET_THREADS if set and positive, else hardware concurrency.
std::size_t worker_count();

// Run body(i) for i in [0, n). Each index writes only its own outputs, so
// results do not depend on the number of workers. The exception from the
// lowest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hankelet
