// parallel.hpp - Deterministic chunked parallel reduction.
//
// Work is split into a fixed number of chunks (independent of thread count)
// and per-chunk results are combined in chunk order, so the result is
// bitwise identical whether run on 1 or 16 threads. Thread count is capped
// by the UNIFORMITY_THREADS environment variable.

#pragma once

#include <atomic>
#include <complex>
#include <cstdlib>
#include <thread>
#include <vector>

namespace unif {

inline unsigned thread_budget() {
  if (const char* env = std::getenv("UNIFORMITY_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

inline constexpr int kReductionChunks = 64;

// Sums chunk_fn(chunk_begin, chunk_end) over [begin, end), partitioned into
// kReductionChunks fixed slices. T must be default-constructible and support
// operator+=. Chunk results are combined pairwise in index order.
template <typename T, typename ChunkFn>
T parallel_reduce(long long begin, long long end, ChunkFn&& chunk_fn) {
  if (end <= begin) return T{};
  const long long n = end - begin;
  const int chunks = static_cast<int>(n < kReductionChunks ? n : kReductionChunks);
  std::vector<T> partial(chunks);

  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      int c = next.fetch_add(1);
      if (c >= chunks) return;
      long long lo = begin + n * c / chunks;
      long long hi = begin + n * (c + 1) / chunks;
      partial[c] = chunk_fn(lo, hi);
    }
  };

  unsigned nthreads = thread_budget();
  if (nthreads <= 1 || chunks == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    unsigned use = nthreads < static_cast<unsigned>(chunks) ? nthreads : static_cast<unsigned>(chunks);
    pool.reserve(use);
    for (unsigned i = 0; i < use; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Pairwise tree over the fixed chunk array.
  std::vector<T> level = std::move(partial);
  while (level.size() > 1) {
    std::vector<T> up;
    up.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
      T s = level[i];
      s += level[i + 1];
      up.push_back(s);
    }
    if (level.size() % 2) up.push_back(level.back());
    level = std::move(up);
  }
  return level[0];
}

// Pairwise (tree) summation of a vector in a fixed order.
template <typename T>
T pairwise_sum(const std::vector<T>& v) {
  if (v.empty()) return T{};
  std::vector<T> level = v;
  while (level.size() > 1) {
    std::vector<T> up;
    up.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) up.push_back(level[i] + level[i + 1]);
    if (level.size() % 2) up.push_back(level.back());
    level = std::move(up);
  }
  return level[0];
}

}  // namespace unif
