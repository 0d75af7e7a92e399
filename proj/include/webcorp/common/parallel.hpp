#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace webcorp {

/// Runs fn(shard) on `shards` threads (inline when shards <= 1). The first
/// exception thrown by any shard is rethrown after all have joined.
template <typename Fn>
void run_shards(std::size_t shards, Fn fn) {
    shards = std::max<std::size_t>(1, shards);
    if (shards == 1) {
        fn(std::size_t{0});
        return;
    }
    std::exception_ptr failure;
    std::mutex mu;
    std::vector<std::thread> workers;
    workers.reserve(shards);
    for (std::size_t s = 0; s < shards; ++s) {
        workers.emplace_back([&, s] {
            try {
                fn(s);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto &w : workers) w.join();
    if (failure) std::rethrow_exception(failure);
}

/// fn(i) for i in [0, n); item i runs on shard i % shards.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t shards, Fn fn) {
    shards = std::max<std::size_t>(1, std::min(shards, n));
    run_shards(shards, [&](std::size_t s) {
        for (std::size_t i = s; i < n; i += shards) fn(i);
    });
}

} // namespace webcorp
