#include "sssp/scatter_hash_table.hpp"

#include <algorithm>
#include <bit>

#include "sssp/parallel.hpp"
#include "sssp/random.hpp"

namespace sssp {

ScatterHashTable::ScatterHashTable(std::size_t capacity)
    : ScatterHashTable(capacity, Params{}) {}

ScatterHashTable::ScatterHashTable(std::size_t capacity, Params params)
    : params_(params) {
  params_.min_size = std::bit_ceil(std::max<std::size_t>(params_.min_size, 2));
  capacity_ = std::bit_ceil(std::max(capacity, 2 * params_.min_size));
  slots_ = std::make_unique<std::atomic<VertexId>[]>(capacity_);
  for (std::size_t i = 0; i < capacity_; ++i)
    slots_[i].store(kEmpty, std::memory_order_relaxed);
  tail_.store(params_.min_size, std::memory_order_relaxed);
}

void ScatterHashTable::try_grow(std::size_t observed_tail) {
  if (observed_tail * 2 > capacity_) return;
  std::size_t expected = observed_tail;
  if (tail_.compare_exchange_strong(expected, observed_tail * 2,
                                    std::memory_order_acq_rel)) {
    est_.store(0, std::memory_order_relaxed);
    resizes_.fetch_add(1, std::memory_order_relaxed);
  }
}

bool ScatterHashTable::insert(VertexId id) {
  const std::uint64_t salt = salt_.load(std::memory_order_relaxed);
  const std::uint64_t h = mix64((std::uint64_t{id} << 20) ^ salt);
  const std::uint64_t coin_mask = (std::uint64_t{1} << params_.sample_shift) - 1;
  for (;;) {
    const std::size_t t = tail();
    const std::size_t off = region_offset(t);
    const std::size_t size = t - off;
    const std::size_t start = h & (size - 1);
    for (std::size_t probe = 0; probe < size; ++probe) {
      auto& cell = slots_[off + ((start + probe) & (size - 1))];
      VertexId expected = kEmpty;
      if (cell.load(std::memory_order_relaxed) != kEmpty) continue;
      if (!cell.compare_exchange_strong(expected, id, std::memory_order_relaxed))
        continue;
      if (((h >> 40) & coin_mask) == 0) {
        const std::size_t est = est_.fetch_add(1, std::memory_order_relaxed) + 1;
        if (static_cast<double>(est << params_.sample_shift) >
            params_.load_factor * static_cast<double>(size))
          try_grow(t);
      }
      return true;
    }
    // Region full: force growth, or report exhaustion if none is possible.
    try_grow(t);
    if (tail() == t) return false;
  }
}

void ScatterHashTable::clear() {
  const std::size_t t = tail();
  par::parallel_for(
      t, [&](std::size_t i) { slots_[i].store(kEmpty, std::memory_order_relaxed); },
      4096);
  tail_.store(params_.min_size, std::memory_order_release);
  est_.store(0, std::memory_order_relaxed);
  salt_.fetch_add(1, std::memory_order_relaxed);
}

std::vector<VertexId> ScatterHashTable::collect() const {
  const std::size_t t = tail();
  auto idx = par::pack_indices<std::size_t>(
      t, [&](std::size_t i) { return slot(i) != kEmpty; });
  std::vector<VertexId> out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = slot(idx[i]);
  return out;
}

}  // namespace sssp
