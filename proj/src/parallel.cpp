#include "sssp/parallel.hpp"

namespace sssp::par {
namespace {

thread_local int tl_workers = 0;

int default_workers() {
  static const int value = [] {
    const int n = omp_get_max_threads();
    return n > 0 ? n : 1;
  }();
  return value;
}

}  // namespace

int num_workers() { return tl_workers > 0 ? tl_workers : default_workers(); }

ThreadScope::ThreadScope(int threads) : previous_(tl_workers) {
  if (threads > 0) tl_workers = threads;
}

ThreadScope::~ThreadScope() { tl_workers = previous_; }

std::size_t ShardedCounter::shard_index() noexcept {
  static std::atomic<std::size_t> next{0};
  thread_local const std::size_t index =
      next.fetch_add(1, std::memory_order_relaxed) % kShards;
  return index;
}

}  // namespace sssp::par
