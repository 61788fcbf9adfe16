#include "eak/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace eak {

unsigned resolve_threads(unsigned requested) {
    if (requested == 0) {
        if (const char* env = std::getenv("EAK_THREADS")) {
            try {
                long v = std::stol(env);
                if (v > 0) requested = static_cast<unsigned>(v);
            } catch (...) {
            }
        }
    }
    if (requested == 0) requested = std::thread::hardware_concurrency();
    return requested == 0 ? 1 : requested;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex m;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(m);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(threads, n); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace eak
