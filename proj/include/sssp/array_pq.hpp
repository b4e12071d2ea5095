#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "sssp/distance_map.hpp"
#include "sssp/labpq.hpp"
#include "sssp/parallel.hpp"
#include "sssp/scatter_hash_table.hpp"

namespace sssp {

/// Flat-array LaB-PQ: one queued flag per id. The flags are authoritative.
/// In sparse rounds a ScatterHashTable additionally lists the queued ids so
/// extract can skip the full scan; the table is dropped (and extract falls
/// back to scanning the flags) whenever it cannot be trusted.
class ArrayPq {
 public:
  ArrayPq(const DistanceMap& dist, std::size_t n,
          std::optional<AugmentedMonoid> aug = std::nullopt);

  ArrayPq(const ArrayPq&) = delete;
  ArrayPq& operator=(const ArrayPq&) = delete;

  /// Concurrent. Only the caller that flips the flag inserts into the table.
  void update(VertexId id);

  /// Exclusive. Ascending id order.
  std::vector<VertexId> extract(Distance theta);

  Distance reduce();
  Distance min_key();

  std::size_t size() const noexcept { return static_cast<std::size_t>(size_.total()); }
  bool empty() const noexcept { return size() == 0; }
  bool contains(VertexId id) const {
    return id < n_ && flags_[id].load(std::memory_order_relaxed) != 0;
  }

  /// Chooses the representation used for the updates of the coming round.
  /// Sparse modes rebuild the table from the ids left queued by the last
  /// extract; dense drops it. Exclusive.
  void begin_round(FrontierMode mode);

  std::vector<Distance> sample_keys(std::size_t count, Rng& rng) const;
  std::vector<Distance> snapshot_keys() const;

  // --- introspection for tests ------------------------------------------
  FrontierMode mode() const noexcept { return mode_; }
  bool table_active() const noexcept;
  const ScatterHashTable& table() const noexcept { return table_; }
  /// Times the table ran out of room and extract fell back to a scan.
  std::size_t table_overflows() const noexcept { return overflows_; }

 private:
  std::vector<VertexId> queued_ids() const;
  void rebuild_table(const std::vector<VertexId>& ids);

  const DistanceMap* dist_;
  std::size_t n_;
  std::optional<AugmentedMonoid> aug_;
  std::unique_ptr<std::atomic<std::uint8_t>[]> flags_;
  par::ShardedCounter size_;
  ScatterHashTable table_;
  FrontierMode mode_ = FrontierMode::kSparse;

  // Table validity: the table lists exactly the queued ids while `listing_`
  // holds and no insert overflowed.
  bool listing_ = true;
  std::atomic<bool> overflowed_{false};
  // Updates that flipped a flag while the table was not listing.
  std::atomic<bool> unlisted_updates_{false};
  std::vector<VertexId> remaining_;  // queued ids after the last extract
  bool remaining_fresh_ = false;
  std::size_t overflows_ = 0;
};

}  // namespace sssp
