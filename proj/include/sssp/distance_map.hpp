#pragma once

#include <atomic>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "sssp/types.hpp"

namespace sssp {

/// Atomically lowers `cell` to `value` if that is smaller. Returns true iff
/// this call strictly decreased the cell.
inline bool write_min(std::atomic<Distance>& cell, Distance value) noexcept {
  Distance current = cell.load(std::memory_order_relaxed);
  while (value < current) {
    if (cell.compare_exchange_weak(current, value, std::memory_order_relaxed))
      return true;
  }
  return false;
}

/// Per-vertex tentative distances shared by the stepping loop and the queue
/// (the queue's key mapping). Values only decrease during a run.
class DistanceMap {
 public:
  DistanceMap() = default;
  explicit DistanceMap(std::size_t n, Distance init = kInfDistance)
      : size_(n), cells_(std::make_unique<std::atomic<Distance>[]>(n)) {
    fill(init);
  }

  std::size_t size() const noexcept { return size_; }

  Distance get(std::size_t i) const noexcept {
    return cells_[i].load(std::memory_order_relaxed);
  }
  Distance operator[](std::size_t i) const noexcept { return get(i); }

  /// Plain store; only for initialization and exclusive phases.
  void set(std::size_t i, Distance d) noexcept {
    cells_[i].store(d, std::memory_order_relaxed);
  }

  bool write_min(std::size_t i, Distance d) noexcept {
    return sssp::write_min(cells_[i], d);
  }

  std::atomic<Distance>& cell(std::size_t i) noexcept { return cells_[i]; }

  void fill(Distance d) noexcept {
    for (std::size_t i = 0; i < size_; ++i) set(i, d);
  }

  std::vector<Distance> snapshot() const {
    std::vector<Distance> out(size_);
    for (std::size_t i = 0; i < size_; ++i) out[i] = get(i);
    return out;
  }

 private:
  std::size_t size_ = 0;
  std::unique_ptr<std::atomic<Distance>[]> cells_;
};

}  // namespace sssp
