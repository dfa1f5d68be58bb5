#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "bigjump/rng.hpp"

namespace bigjump {

inline unsigned default_thread_count() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs `batch_count` independent batches, batch b drawing from
// RngStream(seed, b), on up to `threads` workers. Results land in a vector
// indexed by batch id, so any later reduction is order-fixed and the
// aggregate depends only on (seed, batch_count), not on scheduling.
template <class Result, class Fn>
std::vector<Result> run_batches(std::uint64_t seed, int batch_count, Fn fn,
                                unsigned threads = 0) {
    if (threads == 0) threads = default_thread_count();
    std::vector<Result> results(static_cast<std::size_t>(batch_count));
    std::atomic<int> next{0};
    auto worker = [&]() {
        while (true) {
            const int b = next.fetch_add(1);
            if (b >= batch_count) break;
            RngStream rng(seed, static_cast<std::uint64_t>(b));
            results[static_cast<std::size_t>(b)] = fn(b, rng);
        }
    };
    if (threads <= 1 || batch_count <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        const unsigned count = std::min<unsigned>(threads, static_cast<unsigned>(batch_count));
        pool.reserve(count);
        for (unsigned i = 0; i < count; ++i) pool.emplace_back(worker);
    }
    return results;
}

}  // namespace bigjump
