#pragma once

// Thin fork-join layer over OpenMP: a scoped thread budget, a parallel loop,
// an order-preserving parallel pack and a sharded counter for hot concurrent
// increments.

#include <omp.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

namespace sssp::par {

/// Threads used by parallel regions started from the calling thread.
int num_workers();

/// Sets the worker budget for the lifetime of the guard (0 keeps the current
/// value). Budgets nest.
class ThreadScope {
 public:
  explicit ThreadScope(int threads);
  ~ThreadScope();
  ThreadScope(const ThreadScope&) = delete;
  ThreadScope& operator=(const ThreadScope&) = delete;

 private:
  int previous_;
};

/// Runs fn(i) for i in [0, n). Falls back to a serial loop for small n or a
/// single worker.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn, std::size_t grain = 256) {
  const int workers = num_workers();
  if (workers <= 1 || n <= grain) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const auto count = static_cast<std::int64_t>(n);
  const auto chunk = static_cast<std::int64_t>(grain);
#pragma omp parallel for schedule(dynamic, chunk) num_threads(workers)
  for (std::int64_t i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
}

/// Returns, in increasing order, every i in [0, n) with pred(i). Two passes:
/// per-block counts, then per-block writes at prefix offsets.
template <typename T, typename Pred>
std::vector<T> pack_indices(std::size_t n, Pred&& pred) {
  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<std::size_t> offsets(blocks + 1, 0);
  parallel_for(
      blocks,
      [&](std::size_t b) {
        const std::size_t lo = b * kBlock, hi = std::min(n, lo + kBlock);
        std::size_t c = 0;
        for (std::size_t i = lo; i < hi; ++i) c += pred(i) ? 1 : 0;
        offsets[b + 1] = c;
      },
      1);
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<T> out(offsets[blocks]);
  parallel_for(
      blocks,
      [&](std::size_t b) {
        const std::size_t lo = b * kBlock, hi = std::min(n, lo + kBlock);
        std::size_t w = offsets[b];
        for (std::size_t i = lo; i < hi; ++i)
          if (pred(i)) out[w++] = static_cast<T>(i);
      },
      1);
  return out;
}

/// Counter striped over cache lines. add() is safe from any thread; total()
/// is exact once concurrent writers have quiesced.
class ShardedCounter {
 public:
  void add(std::int64_t delta) noexcept {
    shards_[shard_index()].value.fetch_add(delta, std::memory_order_relaxed);
  }
  std::int64_t total() const noexcept {
    std::int64_t s = 0;
    for (const auto& sh : shards_) s += sh.value.load(std::memory_order_relaxed);
    return s;
  }
  void reset() noexcept {
    for (auto& sh : shards_) sh.value.store(0, std::memory_order_relaxed);
  }

 private:
  static constexpr std::size_t kShards = 64;
  struct alignas(64) Shard {
    std::atomic<std::int64_t> value{0};
  };
  static std::size_t shard_index() noexcept;

  std::array<Shard, kShards> shards_{};
};

}  // namespace sssp::par
