#ifndef LDPC_CORE_THREADING_HPP
#define LDPC_CORE_THREADING_HPP

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace ldpc {

/// Number of worker threads to use: explicit request if positive, otherwise
/// the LDPC_PRUNE_THREADS environment variable, otherwise the hardware count.
inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("LDPC_PRUNE_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Run fn(i, worker) for i in [0, count) on up to `threads` workers, where
/// worker is in [0, threads). Work items must be independent; exceptions are
/// rethrown on the calling thread.
template <typename Fn>
void parallel_for_workers(std::size_t count, int threads, Fn&& fn) {
    threads = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count ? count : 1));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i, 0);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    auto work = [&](int worker) {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load(std::memory_order_relaxed)) return;
            try {
                fn(i, worker);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    parallel_for_workers(count, threads, [&fn](std::size_t i, int) { fn(i); });
}

} // namespace ldpc

#endif
