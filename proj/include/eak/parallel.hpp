#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace eak {

// Worker count from --threads or EAK_THREADS; 0 means hardware concurrency.
unsigned resolve_threads(unsigned requested);

// Runs body(i) for i in [0, n) on up to `threads` workers. Each index is handled by
// exactly one worker, so writes to distinct slots need no locking. Rethrows the first
// exception.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace eak
