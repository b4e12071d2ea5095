#pragma once

#include <cstdint>
#include <limits>

namespace sssp {

using VertexId = std::uint32_t;
using EdgeIndex = std::uint64_t;
using Weight = std::uint32_t;
using Distance = std::uint64_t;

/// Unreachable / empty-key sentinel. Identity for min, so it composes with
/// write_min without special cases.
inline constexpr Distance kInfDistance = std::numeric_limits<Distance>::max();

inline constexpr VertexId kMaxVertices = VertexId{1} << 31;

/// a + b clamped to kInfDistance.
constexpr Distance saturating_add(Distance a, Distance b) noexcept {
  return (a > kInfDistance - b) ? kInfDistance : a + b;
}

}  // namespace sssp
