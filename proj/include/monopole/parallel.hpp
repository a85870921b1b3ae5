#pragma once

#include <cstdlib>
#include <thread>
#include <utility>
#include <vector>

namespace monopole {

inline int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MONOPOLE_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/* Chunked map-reduce over a vector.  Items are mapped in index order within
   contiguous chunks and chunk results merged in chunk order, so any
   commutative associative merge yields a schedule-independent result. */
template <typename Item, typename Acc, typename MapFn, typename MergeFn>
Acc parallel_map_reduce(const std::vector<Item>& items, Acc init, MapFn map_fn,
                        MergeFn merge_fn, int threads = 0) {
    const int workers = resolve_thread_count(threads);
    const std::size_t n = items.size();
    if (workers <= 1 || n < 2) {
        Acc acc = std::move(init);
        for (const auto& item : items) merge_fn(acc, map_fn(item));
        return acc;
    }
    const std::size_t chunks = std::min(static_cast<std::size_t>(workers), n);
    std::vector<Acc> partial(chunks, init);
    std::vector<std::thread> pool;
    pool.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        pool.emplace_back([&, c] {
            const std::size_t lo = n * c / chunks;
            const std::size_t hi = n * (c + 1) / chunks;
            for (std::size_t i = lo; i < hi; ++i) merge_fn(partial[c], map_fn(items[i]));
        });
    }
    for (auto& worker : pool) worker.join();
    Acc acc = std::move(init);
    for (auto& p : partial) merge_fn(acc, std::move(p));
    return acc;
}

}  // namespace monopole
