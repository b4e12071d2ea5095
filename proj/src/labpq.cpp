#include "sssp/labpq.hpp"

#include <algorithm>
#include <vector>

namespace sssp {

std::string_view to_string(FrontierMode mode) {
  switch (mode) {
    case FrontierMode::kDense: return "dense";
    case FrontierMode::kSparse: return "sparse";
    case FrontierMode::kSuperSparse: return "super-sparse";
  }
  return "unknown";
}

AugmentedMonoid AugmentedMonoid::min_key() {
  return {[](VertexId, Distance key) { return key; },
          [](Distance a, Distance b) { return std::min(a, b); }, kInfDistance};
}

AugmentedMonoid AugmentedMonoid::min_key_plus(std::span<const Distance> values) {
  std::vector<Distance> copy(values.begin(), values.end());
  return {[copy = std::move(copy)](VertexId id, Distance key) {
            return saturating_add(key, copy[id]);
          },
          [](Distance a, Distance b) { return std::min(a, b); }, kInfDistance};
}

}  // namespace sssp
