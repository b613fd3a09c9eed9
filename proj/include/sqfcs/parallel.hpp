// parallel.hpp — index-parallel map over independent work items.
//
// Thread count comes from the SQFCS_THREADS environment variable (default 1,
// i.e. serial). Results must be written by index into preallocated storage;
// with that discipline the output is identical for every thread count.

#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace sqfcs {

inline int default_thread_count() {
    const char* env = std::getenv("SQFCS_THREADS");
    if (env == nullptr) return 1;
    try {
        const int n = std::stoi(env);
        return n >= 1 ? n : 1;
    } catch (...) {
        return 1;
    }
}

template <typename F>
void parallel_for_index(std::size_t n, F&& body,
                        int threads = default_thread_count()) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const auto t = static_cast<std::size_t>(threads);
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (std::size_t w = 0; w < t; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += t) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace sqfcs
