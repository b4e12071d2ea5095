#include "sssp/array_pq.hpp"

#include <algorithm>
#include <bit>

#include "sssp/error.hpp"

namespace sssp {
namespace {

constexpr std::size_t kBlock = 4096;

// min over key(i) for i in [0, count), in parallel blocks.
template <typename Key>
Distance parallel_min(std::size_t count, Distance identity, Key&& key) {
  const std::size_t blocks = (count + kBlock - 1) / kBlock;
  std::vector<Distance> partial(blocks, identity);
  par::parallel_for(
      blocks,
      [&](std::size_t b) {
        Distance best = identity;
        const std::size_t hi = std::min(count, (b + 1) * kBlock);
        for (std::size_t i = b * kBlock; i < hi; ++i) best = std::min(best, key(i));
        partial[b] = best;
      },
      1);
  Distance best = identity;
  for (Distance d : partial) best = std::min(best, d);
  return best;
}

std::size_t table_capacity(std::size_t n) {
  return std::max<std::size_t>(2 * ScatterHashTable::Params{}.min_size,
                               4 * std::bit_ceil(std::max<std::size_t>(n, 1)));
}

}  // namespace

ArrayPq::ArrayPq(const DistanceMap& dist, std::size_t n, std::optional<AugmentedMonoid> aug)
    : dist_(&dist), n_(n), aug_(std::move(aug)), table_(table_capacity(n)) {
  if (n > dist.size()) fail(ErrorKind::kInvalidArgument, "queue larger than its distance map");
  flags_ = std::make_unique<std::atomic<std::uint8_t>[]>(n_);
  for (std::size_t i = 0; i < n_; ++i) flags_[i].store(0, std::memory_order_relaxed);
}

bool ArrayPq::table_active() const noexcept {
  return listing_ && !overflowed_.load(std::memory_order_relaxed);
}

void ArrayPq::update(VertexId id) {
  auto& flag = flags_[id];
  if (flag.load(std::memory_order_relaxed) != 0) return;
  if (flag.exchange(1, std::memory_order_acq_rel) != 0) return;
  size_.add(1);
  if (listing_) {
    if (!table_.insert(id)) overflowed_.store(true, std::memory_order_relaxed);
  } else {
    unlisted_updates_.store(true, std::memory_order_relaxed);
  }
}

std::vector<VertexId> ArrayPq::queued_ids() const {
  if (table_active()) {
    auto ids = table_.collect();
    std::sort(ids.begin(), ids.end());
    return ids;
  }
  return par::pack_indices<VertexId>(
      n_, [&](std::size_t i) { return flags_[i].load(std::memory_order_relaxed) != 0; });
}

std::vector<VertexId> ArrayPq::extract(Distance theta) {
  if (listing_ && overflowed_.load(std::memory_order_relaxed)) ++overflows_;
  const std::vector<VertexId> candidates = queued_ids();
  auto hit = [&](std::size_t i) { return dist_->get(candidates[i]) <= theta; };
  const auto taken = par::pack_indices<std::size_t>(candidates.size(), hit);
  const auto kept = par::pack_indices<std::size_t>(
      candidates.size(), [&](std::size_t i) { return !hit(i); });

  std::vector<VertexId> out(taken.size());
  par::parallel_for(out.size(), [&](std::size_t i) {
    out[i] = candidates[taken[i]];
    flags_[out[i]].store(0, std::memory_order_relaxed);
  });
  size_.add(-static_cast<std::int64_t>(out.size()));

  remaining_.resize(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) remaining_[i] = candidates[kept[i]];
  remaining_fresh_ = true;
  unlisted_updates_.store(false, std::memory_order_relaxed);
  listing_ = false;
  overflowed_.store(false, std::memory_order_relaxed);
  return out;
}

void ArrayPq::rebuild_table(const std::vector<VertexId>& ids) {
  table_.clear();
  overflowed_.store(false, std::memory_order_relaxed);
  par::parallel_for(ids.size(), [&](std::size_t i) {
    if (!table_.insert(ids[i])) overflowed_.store(true, std::memory_order_relaxed);
  });
}

void ArrayPq::begin_round(FrontierMode mode) {
  mode_ = mode;
  if (mode == FrontierMode::kDense) {
    listing_ = false;
    remaining_fresh_ = false;
    remaining_.clear();
    return;
  }
  if (listing_) return;
  if (remaining_fresh_ && !unlisted_updates_.load(std::memory_order_relaxed)) {
    rebuild_table(remaining_);
  } else {
    rebuild_table(par::pack_indices<VertexId>(
        n_, [&](std::size_t i) { return flags_[i].load(std::memory_order_relaxed) != 0; }));
  }
  listing_ = true;
  remaining_fresh_ = false;
  remaining_.clear();
  unlisted_updates_.store(false, std::memory_order_relaxed);
}

Distance ArrayPq::min_key() {
  const auto ids = queued_ids();
  return parallel_min(ids.size(), kInfDistance, [&](std::size_t i) { return dist_->get(ids[i]); });
}

Distance ArrayPq::reduce() {
  if (!aug_) fail(ErrorKind::kConfig, "reduce() on an array queue without augmentation");
  const auto ids = queued_ids();
  const std::size_t blocks = (ids.size() + kBlock - 1) / kBlock;
  std::vector<Distance> partial(blocks, aug_->identity);
  par::parallel_for(
      blocks,
      [&](std::size_t b) {
        Distance acc = aug_->identity;
        const std::size_t hi = std::min(ids.size(), (b + 1) * kBlock);
        for (std::size_t i = b * kBlock; i < hi; ++i)
          acc = aug_->combine(acc, aug_->map(ids[i], dist_->get(ids[i])));
        partial[b] = acc;
      },
      1);
  Distance acc = aug_->identity;
  for (Distance p : partial) acc = aug_->combine(acc, p);
  return acc;
}

std::vector<Distance> ArrayPq::snapshot_keys() const {
  const auto ids = queued_ids();
  std::vector<Distance> keys(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) keys[i] = dist_->get(ids[i]);
  return keys;
}

std::vector<Distance> ArrayPq::sample_keys(std::size_t count, Rng& rng) const {
  std::vector<Distance> out;
  if (table_active()) {
    out = rejection_sample(table_.tail(), count, rng, [&](std::size_t s, Distance& key) {
      const VertexId id = table_.slot(s);
      if (id == ScatterHashTable::kEmpty) return false;
      key = dist_->get(id);
      return true;
    });
  } else {
    out = rejection_sample(n_, count, rng, [&](std::size_t i, Distance& key) {
      if (flags_[i].load(std::memory_order_relaxed) == 0) return false;
      key = dist_->get(i);
      return true;
    });
  }
  if (out.size() < count) out = sample_from_snapshot(snapshot_keys(), count, rng);
  return out;
}

}  // namespace sssp
