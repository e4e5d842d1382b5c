#pragma once

// Shared plumbing: indexed signature enumeration and a bounded-width
// parallel sweep helper. TSIF_THREADS caps worker count (default: hardware
// concurrency); sweeps must only merge results associatively.

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "tsinv/base.hpp"

namespace tsinv {

inline long long pow3(int e) {
    long long r = 1;
    while (e-- > 0) r *= 3;
    return r;
}

// The idx-th signature of a given length in lexicographic order.
inline Signature signature_from_index(int len, long long idx) {
    Signature s(static_cast<std::size_t>(len), kLt);
    for (int pos = len - 1; pos >= 0; --pos) {
        s[static_cast<std::size_t>(pos)] = sym_char(static_cast<int>(idx % 3));
        idx /= 3;
    }
    return s;
}

inline int worker_count() {
    if (const char* env = std::getenv("TSIF_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Partition [0, total) into contiguous chunks, one worker thread each.
// fn(worker_id, begin, end) must not touch shared mutable state except its
// own slot.
inline void parallel_chunks(long long total,
                            const std::function<void(int, long long, long long)>& fn) {
    int workers = worker_count();
    if (total <= 0) return;
    if (workers <= 1 || total < 1024) {
        fn(0, 0, total);
        return;
    }
    std::vector<std::thread> threads;
    long long chunk = (total + workers - 1) / workers;
    int used = 0;
    for (int w = 0; w < workers; ++w) {
        long long b = w * chunk, e = std::min(total, b + chunk);
        if (b >= e) break;
        ++used;
        threads.emplace_back([&fn, w, b, e] { fn(w, b, e); });
    }
    for (auto& t : threads) t.join();
    (void)used;
}

}  // namespace tsinv
