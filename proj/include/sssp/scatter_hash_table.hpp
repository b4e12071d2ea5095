#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "sssp/types.hpp"

namespace sssp {

/// Insert-only concurrent set of vertex ids that scatters entries to random
/// slots of a preallocated array. The live region is [offset, tail); when the
/// sampled size estimate passes the load threshold, new inserts move to
/// [tail, 2 * tail). Nothing is copied on growth, so a scan of [0, tail)
/// sees every region.
///
/// Callers must not insert the same id twice between clears; ArrayPq gates
/// inserts with a per-id flag.
class ScatterHashTable {
 public:
  struct Params {
    std::uint32_t sample_shift = 6;  // sample rate 1 / 2^shift
    double load_factor = 0.5;
    std::size_t min_size = 1024;
  };

  static constexpr VertexId kEmpty = ~VertexId{0};

  /// `capacity` is the physical slot count; rounded up to a power of two
  /// and to at least 2 * min_size.
  explicit ScatterHashTable(std::size_t capacity);
  ScatterHashTable(std::size_t capacity, Params params);

  /// Returns false when the table is physically full (capacity error); the
  /// id is then not stored.
  bool insert(VertexId id);

  /// Forgets all entries and returns to a MIN_SIZE region starting at 0.
  /// Exclusive.
  void clear();

  std::size_t offset() const noexcept { return region_offset(tail()); }
  std::size_t tail() const noexcept { return tail_.load(std::memory_order_acquire); }
  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t resizes() const noexcept { return resizes_.load(std::memory_order_relaxed); }
  /// Sampled size estimate for the current region.
  std::size_t estimated_size() const noexcept {
    return est_.load(std::memory_order_relaxed) << params_.sample_shift;
  }

  /// Raw slot access for scans over [0, tail()).
  VertexId slot(std::size_t i) const noexcept {
    return slots_[i].load(std::memory_order_relaxed);
  }

  /// Live ids in slot order. Exclusive.
  std::vector<VertexId> collect() const;

  const Params& params() const noexcept { return params_; }

 private:
  std::size_t region_offset(std::size_t tail) const noexcept {
    return tail == params_.min_size ? 0 : tail / 2;
  }
  void try_grow(std::size_t observed_tail);

  Params params_;
  std::size_t capacity_;
  std::unique_ptr<std::atomic<VertexId>[]> slots_;
  std::atomic<std::size_t> tail_;
  std::atomic<std::size_t> est_{0};
  std::atomic<std::size_t> resizes_{0};
  std::atomic<std::uint64_t> salt_{0};
};

}  // namespace sssp
