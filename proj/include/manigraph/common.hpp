#pragma once

#include <Eigen/Dense>

#include <atomic>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace manigraph {

using Eigen::MatrixXd;
using Eigen::VectorXd;

using NodeId = std::int32_t;

// Work is cut into fixed-size blocks (independent of the thread count) and
// partial results are folded in block order, so every parallel routine in
// the library returns the same bits no matter how many threads run it.
inline constexpr std::size_t kParallelBlock = 256;

inline int resolve_threads(int threads) {
    if (threads > 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(block_begin, block_end) over [0, count) in kParallelBlock chunks.
template <typename Fn>
void parallel_for_blocks(std::size_t count, int threads, Fn&& fn) {
    threads = resolve_threads(threads);
    const std::size_t nblocks = (count + kParallelBlock - 1) / kParallelBlock;
    if (threads <= 1 || nblocks <= 1) {
        for (std::size_t b = 0; b < nblocks; ++b) {
            const std::size_t lo = b * kParallelBlock;
            fn(lo, std::min(count, lo + kParallelBlock));
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= nblocks) break;
            const std::size_t lo = b * kParallelBlock;
            fn(lo, std::min(count, lo + kParallelBlock));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads) - 1);
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

// FNV-1a, used to fingerprint graphs so embeddings can name their source.
inline std::uint64_t fnv1a(const void* data, std::size_t bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < bytes; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

template <typename T>
std::uint64_t fnv1a_span(const std::vector<T>& v, std::uint64_t h = 0xcbf29ce484222325ULL) {
    return fnv1a(v.data(), v.size() * sizeof(T), h);
}

[[noreturn]] inline void fail(const std::string& msg) { throw std::runtime_error(msg); }

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace manigraph
