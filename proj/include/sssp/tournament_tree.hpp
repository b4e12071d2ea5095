#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sssp/distance_map.hpp"
#include "sssp/labpq.hpp"
#include "sssp/parallel.hpp"

namespace sssp {

/// Node-touch instrumentation. The interior counts are the work measure:
/// one unit per renew flag claimed by a mark walk, per interior key
/// recomputed by sync, and per interior node descended into by extract.
/// Leaf writes and the single failed test-and-set that ends a mark walk are
/// O(1) per mark and tracked separately.
struct TreeCounters {
  std::int64_t renew_sets = 0;
  std::int64_t sync_recomputes = 0;
  std::int64_t extract_expansions = 0;
  std::int64_t leaf_touches = 0;
  std::int64_t failed_tas = 0;

  std::int64_t interior_touches() const noexcept {
    return renew_sets + sync_recomputes + extract_expansions;
  }
};

/// Tournament-tree LaB-PQ. Leaves hold record ids (padded with phantom
/// leaves to a power of two); every interior node caches the minimum live key
/// of its subtree. Updates only walk renew flags up the tree; keys are
/// repaired lazily by sync() at the next extract, visiting only renewed
/// subtrees.
class TournamentTree {
 public:
  /// Records 0..n-1, none queued. `dist` must outlive the tree and have at
  /// least n cells; extra cells are the id space for grow().
  TournamentTree(const DistanceMap& dist, std::size_t n,
                 std::optional<AugmentedMonoid> aug = std::nullopt);
  /// Records 0..n-1 with `live` queued; keys built bottom-up in linear work.
  TournamentTree(const DistanceMap& dist, std::size_t n,
                 std::span<const VertexId> live,
                 std::optional<AugmentedMonoid> aug = std::nullopt);

  TournamentTree(const TournamentTree&) = delete;
  TournamentTree& operator=(const TournamentTree&) = delete;

  // --- LaB-PQ interface -------------------------------------------------

  /// Queues `id` (or notes its key changed). Concurrent.
  void update(VertexId id) { mark(id, true); }

  /// Sets the record's queued flag and claims renew flags up the root path,
  /// stopping at the first flag another walk already claimed. Concurrent.
  void mark(VertexId id, bool queued);

  /// Restores every renewed interior key; returns the root key. Exclusive.
  Distance sync();

  /// Removes and returns all queued ids with key <= theta, ascending.
  /// Exclusive.
  std::vector<VertexId> extract(Distance theta);

  /// Fold of the configured monoid over queued records. Throws
  /// Error(kConfig) when the tree has no augmentation. Exclusive.
  Distance reduce();

  /// Smallest queued key, kInfDistance when empty. Exclusive.
  Distance min_key() { return sync(); }

  std::size_t size() const noexcept { return static_cast<std::size_t>(queued_.total()); }
  bool empty() const noexcept { return size() == 0; }
  bool contains(VertexId id) const;

  /// Representation hint from the stepping loop; the tree has only one.
  void begin_round(FrontierMode) noexcept {}

  std::vector<Distance> sample_keys(std::size_t count, Rng& rng) const;
  std::vector<Distance> snapshot_keys() const;

  // --- fully dynamic extension ------------------------------------------

  /// Allocates k fresh records (not queued) and returns their ids. Ids come
  /// from the unused tail of the distance map.
  std::vector<VertexId> grow(std::size_t k);

  /// Deallocates `ids`, refilling the holes with records from the last
  /// leaves. Throws Error(kInvalidArgument) for ids not allocated. Exclusive.
  void delete_batch(std::span<const VertexId> ids);

  std::size_t allocated() const noexcept { return allocated_; }
  std::size_t leaf_capacity() const noexcept { return leaves_; }
  /// Leaf moves performed by the last delete_batch.
  std::size_t last_delete_moves() const noexcept { return last_moves_; }
  std::vector<VertexId> allocated_ids() const;

  // --- introspection for tests ------------------------------------------

  /// Interior nodes are 1..leaf_capacity()-1 in heap order (root = 1).
  Distance interior_key(std::size_t node) const { return key_[node]; }
  bool renew_flag(std::size_t node) const {
    return renew_[node].load(std::memory_order_relaxed) != 0;
  }
  std::size_t count_renew_flags() const;

  /// Brute-force recomputation of every interior key (and augmented value)
  /// from the leaves; also requires all renew flags clear. Meaningful right
  /// after sync().
  bool check_invariants(std::string* why = nullptr) const;

  TreeCounters counters() const;
  void reset_counters();

 private:
  static constexpr VertexId kNone = ~VertexId{0};

  void allocate(std::size_t leaves);
  void rebuild_all();
  Distance leaf_key(std::size_t slot) const;
  Distance leaf_aug(std::size_t slot) const;
  Distance node_aug(std::size_t node) const;
  void mark_path(std::size_t slot);
  Distance sync_node(std::size_t node, std::int64_t& recomputes, bool spawn);
  void extract_node(std::size_t node, Distance theta, std::vector<VertexId>& out,
                    std::int64_t& expansions, bool spawn);
  bool spawnable(std::size_t node) const;

  const DistanceMap* dist_;
  std::optional<AugmentedMonoid> aug_;

  std::size_t leaves_ = 0;     // power of two, >= 2
  std::size_t allocated_ = 0;  // slots [0, allocated_) hold records
  VertexId next_id_ = 0;

  std::vector<Distance> key_;                     // interior, index 1..leaves_-1
  std::vector<Distance> aug_value_;               // interior, when aug_
  std::unique_ptr<std::atomic<std::uint8_t>[]> renew_;
  std::unique_ptr<std::atomic<std::uint8_t>[]> in_q_;  // per slot
  std::vector<VertexId> slot_id_;                 // slot -> id
  std::vector<VertexId> slot_of_;                 // id -> slot

  par::ShardedCounter queued_;
  par::ShardedCounter renew_sets_, sync_recomputes_, extract_expansions_,
      leaf_touches_, failed_tas_;
  std::size_t last_moves_ = 0;
  bool permuted_ = false;  // some record left its id-order leaf
};

}  // namespace sssp
