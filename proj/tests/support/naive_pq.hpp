#pragma once

// Reference LaB-PQ: an ordered id set filtered linearly. Slow and obviously
// correct; the backends are compared against it.

#include <optional>
#include <set>
#include <vector>

#include "sssp/distance_map.hpp"
#include "sssp/labpq.hpp"

namespace sssp::testing {

class NaivePq {
 public:
  NaivePq(const DistanceMap& dist, std::optional<AugmentedMonoid> aug = std::nullopt)
      : dist_(&dist), aug_(std::move(aug)) {}

  void update(VertexId id) { ids_.insert(id); }

  std::vector<VertexId> extract(Distance theta) {
    std::vector<VertexId> out;
    for (auto it = ids_.begin(); it != ids_.end();) {
      if (dist_->get(*it) <= theta) {
        out.push_back(*it);
        it = ids_.erase(it);
      } else {
        ++it;
      }
    }
    return out;
  }

  Distance reduce() const {
    Distance acc = aug_->identity;
    for (VertexId id : ids_) acc = aug_->combine(acc, aug_->map(id, dist_->get(id)));
    return acc;
  }

  Distance min_key() const {
    Distance best = kInfDistance;
    for (VertexId id : ids_) best = std::min(best, dist_->get(id));
    return best;
  }

  std::size_t size() const { return ids_.size(); }
  bool contains(VertexId id) const { return ids_.count(id) != 0; }

 private:
  const DistanceMap* dist_;
  std::optional<AugmentedMonoid> aug_;
  std::set<VertexId> ids_;
};

}  // namespace sssp::testing
