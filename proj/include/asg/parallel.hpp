#ifndef ASG_PARALLEL_HPP
#define ASG_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace asg {

// Fixed-size chunk grid with worker threads pulling chunk indices from an
// atomic counter. Chunk boundaries depend only on n, never on the thread
// count, so per-chunk partial results merged in ascending chunk order are
// bit-identical for any number of workers.
constexpr std::size_t kChunkSize = 4096;

inline std::size_t chunk_count(std::size_t n) {
    return (n + kChunkSize - 1) / kChunkSize;
}

// fn(chunk_index, begin, end) must only write chunk-local state.
template <typename Fn>
void for_each_chunk(std::size_t n, int threads, Fn&& fn) {
    const std::size_t chunks = chunk_count(n);
    auto run_chunk = [&](std::size_t ci) {
        std::size_t begin = ci * kChunkSize;
        std::size_t end = begin + kChunkSize < n ? begin + kChunkSize : n;
        fn(ci, begin, end);
    };
    if (threads <= 1 || chunks <= 1) {
        for (std::size_t ci = 0; ci < chunks; ++ci) run_chunk(ci);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t ci = next.fetch_add(1);
            if (ci >= chunks) break;
            run_chunk(ci);
        }
    };
    std::size_t n_workers = static_cast<std::size_t>(threads);
    if (n_workers > chunks) n_workers = chunks;
    std::vector<std::thread> pool;
    pool.reserve(n_workers - 1);
    for (std::size_t i = 0; i + 1 < n_workers; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
}

} // namespace asg

#endif // ASG_PARALLEL_HPP
