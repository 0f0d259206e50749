// Minimal fork-join helper for embarrassingly parallel index ranges.
#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace pzf {

// requested > 0 wins; otherwise PZF_WORKERS, otherwise hardware concurrency.
inline int resolve_workers(int requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("PZF_WORKERS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Splits [begin,end) into contiguous chunks, one per worker thread. The
// callable receives (chunk_begin, chunk_end) and must not throw.
inline void parallel_for(uint64_t begin, uint64_t end, int workers,
                         const std::function<void(uint64_t, uint64_t)>& chunk_fn) {
    if (end <= begin) return;
    uint64_t total = end - begin;
    uint64_t nworkers = static_cast<uint64_t>(resolve_workers(workers));
    if (nworkers > total) nworkers = total;
    if (nworkers <= 1) {
        chunk_fn(begin, end);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(nworkers);
    uint64_t chunk = total / nworkers, extra = total % nworkers;
    uint64_t at = begin;
    for (uint64_t w = 0; w < nworkers; ++w) {
        uint64_t len = chunk + (w < extra ? 1 : 0);
        threads.emplace_back(chunk_fn, at, at + len);
        at += len;
    }
    for (auto& t : threads) t.join();
}

}  // namespace pzf
