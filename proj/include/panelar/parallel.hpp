#ifndef PANELAR_PARALLEL_HPP
#define PANELAR_PARALLEL_HPP

#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace panelar {

// Worker count resolution: explicit request > PANELAR_WORKERS > hardware.
inline int resolve_workers(int requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("PANELAR_WORKERS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs body(i) for i in [0, count) across workers. Each index is an
// independent unit writing to its own output slot, so results do not
// depend on the worker count or on scheduling. Indices are dealt in
// contiguous chunks; the first exception (by index) is rethrown.
template <typename Body>
void parallel_for_index(std::size_t count, int workers, Body&& body) {
    workers = resolve_workers(workers);
    if (count == 0) return;
    if (workers <= 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::size_t n_threads = std::min<std::size_t>(workers, count);
    std::size_t chunk = (count + n_threads - 1) / n_threads;
    std::exception_ptr first_error;
    std::size_t first_error_index = count;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t w = 0; w < n_threads; ++w) {
        std::size_t begin = w * chunk;
        std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end] {
            for (std::size_t i = begin; i < end; ++i) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (i < first_error_index) {
                        first_error_index = i;
                        first_error = std::current_exception();
                    }
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace panelar

#endif // PANELAR_PARALLEL_HPP
