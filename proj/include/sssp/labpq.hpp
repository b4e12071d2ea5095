#pragma once

// Shared vocabulary of the lazy-batched priority queue backends.
//
// A queue holds a set of vertex ids whose keys live in a DistanceMap owned by
// the caller. update(id) may run concurrently from any number of threads and
// only has to take effect by the next extract; extract, reduce, min_key and
// the sampling helpers require exclusive access.

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "sssp/random.hpp"
#include "sssp/types.hpp"

namespace sssp {

enum class FrontierMode { kDense, kSparse, kSuperSparse };

std::string_view to_string(FrontierMode mode);

/// Commutative monoid folded over the queued records by reduce().
struct AugmentedMonoid {
  std::function<Distance(VertexId id, Distance key)> map;
  std::function<Distance(Distance, Distance)> combine;
  Distance identity = kInfDistance;

  /// min over queued keys.
  static AugmentedMonoid min_key();
  /// min over queued (key + values[id]), saturating. Radius-stepping uses it
  /// with values = r_rho.
  static AugmentedMonoid min_key_plus(std::span<const Distance> values);
};

/// Draws `count` keys uniformly (with replacement) from the live records of
/// a candidate universe [0, universe) by rejection. `probe(i, key)` returns
/// true and sets key when candidate i is live. Gives up after a bounded
/// number of misses and returns whatever was drawn; callers then fall back
/// to a full snapshot.
template <typename Probe>
std::vector<Distance> rejection_sample(std::size_t universe, std::size_t count,
                                       Rng& rng, Probe&& probe) {
  std::vector<Distance> out;
  if (universe == 0) return out;
  out.reserve(count);
  std::size_t misses = 0;
  const std::size_t max_misses = 16 * count + 256;
  while (out.size() < count && misses < max_misses) {
    Distance key;
    if (probe(static_cast<std::size_t>(uniform_below(rng, universe)), key))
      out.push_back(key);
    else
      ++misses;
  }
  return out;
}

/// Completes a sample from an explicit snapshot of all queued keys.
inline std::vector<Distance> sample_from_snapshot(std::span<const Distance> keys,
                                                  std::size_t count, Rng& rng) {
  std::vector<Distance> out;
  if (keys.empty()) return out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(keys[uniform_below(rng, keys.size())]);
  return out;
}

}  // namespace sssp
