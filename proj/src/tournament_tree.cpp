#include "sssp/tournament_tree.hpp"

#include <algorithm>
#include <bit>

#include "sssp/error.hpp"

namespace sssp {
namespace {

// Subtrees with fewer leaves than this are processed serially.
constexpr std::size_t kSpawnLeaves = 4096;

}  // namespace

TournamentTree::TournamentTree(const DistanceMap& dist, std::size_t n,
                               std::optional<AugmentedMonoid> aug)
    : TournamentTree(dist, n, std::span<const VertexId>{}, std::move(aug)) {}

TournamentTree::TournamentTree(const DistanceMap& dist, std::size_t n,
                               std::span<const VertexId> live,
                               std::optional<AugmentedMonoid> aug)
    : dist_(&dist), aug_(std::move(aug)) {
  if (n > dist.size())
    fail(ErrorKind::kInvalidArgument, "tournament tree larger than its distance map");
  if (n >= kNone) fail(ErrorKind::kInvalidArgument, "too many records");
  allocate(std::max<std::size_t>(2, std::bit_ceil(std::max<std::size_t>(n, 1))));
  slot_of_.assign(dist.size(), kNone);
  for (std::size_t i = 0; i < n; ++i) {
    slot_id_[i] = static_cast<VertexId>(i);
    slot_of_[i] = static_cast<VertexId>(i);
  }
  allocated_ = n;
  next_id_ = static_cast<VertexId>(n);
  for (VertexId id : live) {
    if (id >= n) fail(ErrorKind::kInvalidArgument, "live id out of range");
    if (in_q_[id].exchange(1, std::memory_order_relaxed) == 0) queued_.add(1);
  }
  rebuild_all();
}

void TournamentTree::allocate(std::size_t leaves) {
  leaves_ = leaves;
  key_.assign(leaves_, kInfDistance);
  if (aug_) aug_value_.assign(leaves_, aug_->identity);
  renew_ = std::make_unique<std::atomic<std::uint8_t>[]>(leaves_);
  in_q_ = std::make_unique<std::atomic<std::uint8_t>[]>(leaves_);
  for (std::size_t i = 0; i < leaves_; ++i) {
    renew_[i].store(0, std::memory_order_relaxed);
    in_q_[i].store(0, std::memory_order_relaxed);
  }
  slot_id_.assign(leaves_, kNone);
}

Distance TournamentTree::leaf_key(std::size_t slot) const {
  return in_q_[slot].load(std::memory_order_relaxed) ? dist_->get(slot_id_[slot])
                                                      : kInfDistance;
}

Distance TournamentTree::leaf_aug(std::size_t slot) const {
  if (!in_q_[slot].load(std::memory_order_relaxed)) return aug_->identity;
  const VertexId id = slot_id_[slot];
  return aug_->map(id, dist_->get(id));
}

Distance TournamentTree::node_aug(std::size_t node) const {
  return node >= leaves_ ? leaf_aug(node - leaves_) : aug_value_[node];
}

void TournamentTree::rebuild_all() {
  for (std::size_t width = leaves_ / 2; width >= 1; width /= 2) {
    par::parallel_for(
        width,
        [&](std::size_t i) {
          const std::size_t t = width + i;
          const std::size_t l = 2 * t, r = 2 * t + 1;
          const Distance lk = l >= leaves_ ? leaf_key(l - leaves_) : key_[l];
          const Distance rk = r >= leaves_ ? leaf_key(r - leaves_) : key_[r];
          key_[t] = std::min(lk, rk);
          if (aug_) aug_value_[t] = aug_->combine(node_aug(l), node_aug(r));
          renew_[t].store(0, std::memory_order_relaxed);
        },
        2048);
  }
}

void TournamentTree::mark(VertexId id, bool queued) {
  const std::size_t slot = slot_of_[id];
  const std::uint8_t old = in_q_[slot].exchange(queued ? 1 : 0, std::memory_order_acq_rel);
  if (queued && !old) queued_.add(1);
  if (!queued && old) queued_.add(-1);
  leaf_touches_.add(1);
  mark_path(slot);
}

void TournamentTree::mark_path(std::size_t slot) {
  std::size_t node = leaves_ + slot;
  std::int64_t claimed = 0;
  while (node > 1) {
    auto& flag = renew_[node / 2];
    if (flag.load(std::memory_order_relaxed) != 0 ||
        flag.exchange(1, std::memory_order_acq_rel) != 0) {
      failed_tas_.add(1);
      break;
    }
    ++claimed;
    node /= 2;
  }
  renew_sets_.add(claimed);
}

bool TournamentTree::spawnable(std::size_t node) const {
  const std::size_t depth = static_cast<std::size_t>(std::bit_width(node)) - 1;
  return (leaves_ >> depth) >= kSpawnLeaves;
}

Distance TournamentTree::sync_node(std::size_t node, std::int64_t& recomputes,
                                   bool spawn) {
  if (node >= leaves_) return leaf_key(node - leaves_);
  if (renew_[node].load(std::memory_order_relaxed) == 0) return key_[node];
  renew_[node].store(0, std::memory_order_relaxed);
  ++recomputes;
  Distance lk, rk;
  if (spawn && spawnable(node)) {
    std::int64_t lrec = 0, rrec = 0;
#pragma omp task shared(lk, lrec)
    lk = sync_node(2 * node, lrec, true);
    rk = sync_node(2 * node + 1, rrec, true);
#pragma omp taskwait
    recomputes += lrec + rrec;
  } else {
    lk = sync_node(2 * node, recomputes, false);
    rk = sync_node(2 * node + 1, recomputes, false);
  }
  key_[node] = std::min(lk, rk);
  if (aug_) aug_value_[node] = aug_->combine(node_aug(2 * node), node_aug(2 * node + 1));
  return key_[node];
}

Distance TournamentTree::sync() {
  std::int64_t recomputes = 0;
  Distance root;
  const int workers = par::num_workers();
  if (workers > 1 && leaves_ >= 2 * kSpawnLeaves) {
#pragma omp parallel num_threads(workers)
#pragma omp single
    root = sync_node(1, recomputes, true);
  } else {
    root = sync_node(1, recomputes, false);
  }
  sync_recomputes_.add(recomputes);
  return root;
}

void TournamentTree::extract_node(std::size_t node, Distance theta,
                                  std::vector<VertexId>& out,
                                  std::int64_t& expansions, bool spawn) {
  if (node >= leaves_) {
    const std::size_t slot = node - leaves_;
    if (!in_q_[slot].load(std::memory_order_relaxed)) return;
    const VertexId id = slot_id_[slot];
    if (dist_->get(id) > theta) return;
    mark(id, false);
    out.push_back(id);
    return;
  }
  if (key_[node] > theta) return;
  ++expansions;
  if (spawn && spawnable(node)) {
    std::vector<VertexId> left, right;
    std::int64_t lexp = 0, rexp = 0;
#pragma omp task shared(left, lexp)
    extract_node(2 * node, theta, left, lexp, true);
    extract_node(2 * node + 1, theta, right, rexp, true);
#pragma omp taskwait
    out.insert(out.end(), left.begin(), left.end());
    out.insert(out.end(), right.begin(), right.end());
    expansions += lexp + rexp;
  } else {
    extract_node(2 * node, theta, out, expansions, false);
    extract_node(2 * node + 1, theta, out, expansions, false);
  }
}

std::vector<VertexId> TournamentTree::extract(Distance theta) {
  sync();
  std::vector<VertexId> out;
  std::int64_t expansions = 0;
  const int workers = par::num_workers();
  if (workers > 1 && leaves_ >= 2 * kSpawnLeaves) {
#pragma omp parallel num_threads(workers)
#pragma omp single
    extract_node(1, theta, out, expansions, true);
  } else {
    extract_node(1, theta, out, expansions, false);
  }
  extract_expansions_.add(expansions);
  // Leaf order is id order until a delete moves records.
  if (permuted_) std::sort(out.begin(), out.end());
  return out;
}

Distance TournamentTree::reduce() {
  if (!aug_) fail(ErrorKind::kConfig, "reduce() on a tournament tree without augmentation");
  sync();
  return aug_value_[1];
}

bool TournamentTree::contains(VertexId id) const {
  if (id >= slot_of_.size() || slot_of_[id] == kNone) return false;
  return in_q_[slot_of_[id]].load(std::memory_order_relaxed) != 0;
}

std::vector<Distance> TournamentTree::snapshot_keys() const {
  std::vector<Distance> out;
  out.reserve(size());
  for (std::size_t s = 0; s < allocated_; ++s)
    if (in_q_[s].load(std::memory_order_relaxed)) out.push_back(dist_->get(slot_id_[s]));
  return out;
}

std::vector<Distance> TournamentTree::sample_keys(std::size_t count, Rng& rng) const {
  auto out = rejection_sample(allocated_, count, rng, [&](std::size_t s, Distance& key) {
    if (!in_q_[s].load(std::memory_order_relaxed)) return false;
    key = dist_->get(slot_id_[s]);
    return true;
  });
  if (out.size() < count) out = sample_from_snapshot(snapshot_keys(), count, rng);
  return out;
}

std::vector<VertexId> TournamentTree::grow(std::size_t k) {
  if (k == 0) fail(ErrorKind::kInvalidArgument, "grow requires k >= 1");
  if (static_cast<std::size_t>(next_id_) + k > dist_->size())
    fail(ErrorKind::kInvalidArgument, "distance map has no room for new records");
  std::vector<VertexId> ids(k);
  if (allocated_ + k > leaves_) {
    // Capacity doubling: copy the records and rebuild once.
    std::vector<VertexId> old_ids(slot_id_.begin(), slot_id_.begin() + allocated_);
    std::vector<std::uint8_t> old_q(allocated_);
    for (std::size_t s = 0; s < allocated_; ++s) old_q[s] = in_q_[s].load(std::memory_order_relaxed);
    allocate(std::bit_ceil(allocated_ + k));
    for (std::size_t s = 0; s < old_ids.size(); ++s) {
      slot_id_[s] = old_ids[s];
      in_q_[s].store(old_q[s], std::memory_order_relaxed);
    }
    for (std::size_t i = 0; i < k; ++i) {
      ids[i] = next_id_++;
      slot_id_[allocated_ + i] = ids[i];
      slot_of_[ids[i]] = static_cast<VertexId>(allocated_ + i);
    }
    allocated_ += k;
    rebuild_all();
    return ids;
  }
  // New records start unqueued, so their leaves keep the phantom key and no
  // interior node changes.
  for (std::size_t i = 0; i < k; ++i) {
    ids[i] = next_id_++;
    slot_id_[allocated_ + i] = ids[i];
    slot_of_[ids[i]] = static_cast<VertexId>(allocated_ + i);
  }
  allocated_ += k;
  return ids;
}

void TournamentTree::delete_batch(std::span<const VertexId> ids) {
  std::vector<std::size_t> slots;
  slots.reserve(ids.size());
  for (VertexId id : ids) {
    if (id >= slot_of_.size() || slot_of_[id] == kNone)
      fail(ErrorKind::kInvalidArgument, "delete of unallocated id " + std::to_string(id));
    slots.push_back(slot_of_[id]);
  }
  std::sort(slots.begin(), slots.end());
  if (std::adjacent_find(slots.begin(), slots.end()) != slots.end())
    fail(ErrorKind::kInvalidArgument, "duplicate id in delete batch");

  const std::size_t new_allocated = allocated_ - slots.size();
  std::vector<std::size_t> movers;
  for (std::size_t s = new_allocated; s < allocated_; ++s)
    if (!std::binary_search(slots.begin(), slots.end(), s)) movers.push_back(s);

  for (VertexId id : ids) {
    const std::size_t s = slot_of_[id];
    if (in_q_[s].exchange(0, std::memory_order_relaxed)) queued_.add(-1);
    slot_of_[id] = kNone;
  }
  std::size_t next_mover = 0;
  for (std::size_t hole : slots) {
    if (hole >= new_allocated) break;
    const std::size_t from = movers[next_mover++];
    const VertexId moved = slot_id_[from];
    slot_id_[hole] = moved;
    in_q_[hole].store(in_q_[from].load(std::memory_order_relaxed), std::memory_order_relaxed);
    slot_of_[moved] = static_cast<VertexId>(hole);
    mark_path(hole);
  }
  for (std::size_t s = new_allocated; s < allocated_; ++s) {
    slot_id_[s] = kNone;
    in_q_[s].store(0, std::memory_order_relaxed);
    mark_path(s);
  }
  allocated_ = new_allocated;
  last_moves_ = movers.size();
  if (last_moves_ > 0) permuted_ = true;
}

std::vector<VertexId> TournamentTree::allocated_ids() const {
  return {slot_id_.begin(), slot_id_.begin() + allocated_};
}

std::size_t TournamentTree::count_renew_flags() const {
  std::size_t c = 0;
  for (std::size_t t = 1; t < leaves_; ++t) c += renew_flag(t) ? 1 : 0;
  return c;
}

bool TournamentTree::check_invariants(std::string* why) const {
  auto complain = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  std::vector<Distance> mins(2 * leaves_, kInfDistance), augs;
  if (aug_) augs.assign(2 * leaves_, aug_->identity);
  std::size_t live = 0;
  for (std::size_t s = 0; s < leaves_; ++s) {
    const bool q = in_q_[s].load(std::memory_order_relaxed) != 0;
    if (q && s >= allocated_) return complain("phantom leaf " + std::to_string(s) + " is queued");
    live += q ? 1 : 0;
    mins[leaves_ + s] = q ? dist_->get(slot_id_[s]) : kInfDistance;
    if (aug_) augs[leaves_ + s] = q ? aug_->map(slot_id_[s], mins[leaves_ + s]) : aug_->identity;
  }
  if (live != size()) return complain("queued count mismatch");
  for (std::size_t t = leaves_ - 1; t >= 1; --t) {
    mins[t] = std::min(mins[2 * t], mins[2 * t + 1]);
    if (key_[t] != mins[t])
      return complain("interior " + std::to_string(t) + " key " + std::to_string(key_[t]) +
                      " != subtree min " + std::to_string(mins[t]));
    if (renew_flag(t)) return complain("renew flag set at interior " + std::to_string(t));
    if (aug_) {
      augs[t] = aug_->combine(augs[2 * t], augs[2 * t + 1]);
      if (aug_value_[t] != augs[t])
        return complain("augmented value mismatch at interior " + std::to_string(t));
    }
  }
  return true;
}

TreeCounters TournamentTree::counters() const {
  TreeCounters c;
  c.renew_sets = renew_sets_.total();
  c.sync_recomputes = sync_recomputes_.total();
  c.extract_expansions = extract_expansions_.total();
  c.leaf_touches = leaf_touches_.total();
  c.failed_tas = failed_tas_.total();
  return c;
}

void TournamentTree::reset_counters() {
  renew_sets_.reset();
  sync_recomputes_.reset();
  extract_expansions_.reset();
  leaf_touches_.reset();
  failed_tas_.reset();
}

}  // namespace sssp
