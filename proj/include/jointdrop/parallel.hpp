#pragma once

#include <cstddef>
#include <functional>

namespace jointdrop {

// Number of workers to use when the caller asks for 0 (hardware concurrency,
// at least 1).
unsigned DefaultThreads();

// Runs fn(i) for every i in [0, n) on up to `threads` workers (0 = default).
// If any call throws, the exception from the smallest failing index is
// rethrown after all workers finish, so error reporting does not depend on
// scheduling.
void ParallelFor(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace jointdrop
