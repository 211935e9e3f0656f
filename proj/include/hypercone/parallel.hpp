#pragma once

#include <cstdint>
#include <functional>

namespace hypercone {

// Worker cap: HYPERCONE_THREADS when set (minimum 1), else hardware concurrency.
unsigned worker_count();

// Runs body(i) for i in [0, count) across workers. Each call must be
// independent and write only to its own slot; exceptions propagate.
void parallel_for(uint64_t count, const std::function<void(uint64_t)>& body);

}  // namespace hypercone
