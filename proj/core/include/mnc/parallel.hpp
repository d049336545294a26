#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace mnc {

// Static-chunked index parallelism.  Each index is processed exactly once by
// exactly one thread, so any kernel that writes only to slot i is
// deterministic regardless of the thread count.  threads == 0 picks the
// hardware count; threads <= 1 (or tiny ranges) runs inline.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    if (threads > count) threads = static_cast<unsigned>(count);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        const std::size_t lo = count * w / threads;
        const std::size_t hi = count * (w + 1) / threads;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}
