#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sssp/distance_map.hpp"
#include "sssp/graph.hpp"
#include "sssp/labpq.hpp"
#include "sssp/random.hpp"
#include "sssp/tournament_tree.hpp"

namespace sssp {

enum class Algorithm { kDijkstra, kBellmanFord, kDelta, kDeltaStar, kRho, kRadius };
enum class Backend { kTree, kArray };
enum class RhoSelector { kSampled, kExact };

std::string_view to_string(Algorithm a);
std::string_view to_string(Backend b);
/// Accepts the names printed by to_string; throws Error(kInvalidArgument).
Algorithm parse_algorithm(std::string_view name);
Backend parse_backend(std::string_view name);

/// Which threshold rule drives the stepping loop, with its parameters.
struct SteppingPolicy {
  Algorithm kind = Algorithm::kDijkstra;
  Distance delta = 0;          // Delta and Delta*
  std::size_t rho = 0;         // rho and radius
  RhoSelector selector = RhoSelector::kSampled;
  std::vector<Distance> radii;  // radius: r_rho per vertex

  static SteppingPolicy dijkstra() { return make(Algorithm::kDijkstra); }
  static SteppingPolicy bellman_ford() { return make(Algorithm::kBellmanFord); }
  static SteppingPolicy delta_stepping(Distance d) {
    auto p = make(Algorithm::kDelta);
    p.delta = d;
    return p;
  }
  static SteppingPolicy delta_star(Distance d) {
    auto p = make(Algorithm::kDeltaStar);
    p.delta = d;
    return p;
  }
  static SteppingPolicy rho_stepping(std::size_t rho, RhoSelector s = RhoSelector::kSampled) {
    auto p = make(Algorithm::kRho);
    p.rho = rho;
    p.selector = s;
    return p;
  }
  static SteppingPolicy radius_stepping(std::size_t rho, std::vector<Distance> radii) {
    auto p = make(Algorithm::kRadius);
    p.rho = rho;
    p.radii = std::move(radii);
    return p;
  }

 private:
  static SteppingPolicy make(Algorithm kind) {
    SteppingPolicy p;
    p.kind = kind;
    return p;
  }
};

struct RunConfig {
  Backend backend = Backend::kTree;
  /// A round is dense when frontier + incident edges exceed this fraction of
  /// the arc count. 0 forces dense rounds; a huge value forces sparse ones.
  double sparse_dense_threshold = 1.0 / 20.0;
  /// Sparse rounds with fewer incident edges per frontier vertex than this
  /// are super-sparse.
  double super_sparse_degree = 20.0;
  bool fusion = true;
  std::size_t fusion_budget = 4096;
  /// Pull from neighbors before pushing; undirected graphs only.
  bool bidirectional = false;
  std::size_t rho_sample_constant = 10;
  bool rho_warmup = true;
  double dense_warmup_fraction = 0.1;
  int threads = 0;  // 0 keeps the ambient worker count
  std::uint64_t seed = 1;
};

struct RoundInfo {
  FrontierMode mode = FrontierMode::kSparse;
  Distance theta = 0;
  std::uint64_t visited_v = 0;
  std::uint64_t visited_e = 0;
  bool substep = false;  // reused the previous threshold
};

struct RunStats {
  std::uint64_t steps = 0;     // threshold computations
  std::uint64_t substeps = 0;  // extra extracts under an unchanged threshold
  std::vector<RoundInfo> rounds;  // one per extract
  std::uint64_t relaxations_attempted = 0;
  std::uint64_t relaxations_succeeded = 0;
  std::uint64_t fused_expansions = 0;
  std::vector<std::uint32_t> extractions_per_vertex;
  bool bidirectional_ignored = false;
  double wall_seconds = 0;
  std::uint64_t graph_fingerprint = 0;
  TreeCounters tree;  // tree backend only

  std::uint32_t max_extractions() const;
  std::uint64_t total_extractions() const;
};

struct RunResult {
  std::vector<Distance> dist;
  RunStats stats;
};

/// Runs the stepping loop from `source`. Throws Error(kInvalidArgument) for
/// a bad source or policy parameter and Error(kConfig) for radius-stepping
/// without a radius table of length n.
RunResult run_sssp(const Graph& g, VertexId source, const SteppingPolicy& policy,
                   const RunConfig& cfg = {});

/// Sum of finite-or-not distances mod 2^64; independent of schedule.
std::uint64_t distance_checksum(std::span<const Distance> dist);

// --- building blocks, exposed for tests -----------------------------------

/// dense iff frontier + edges > threshold * m (strict); otherwise
/// super-sparse iff edges / frontier < super_sparse_degree.
FrontierMode select_mode(std::uint64_t frontier_size, std::uint64_t incident_edges,
                         std::uint64_t n, std::uint64_t m, const RunConfig& cfg);

/// rho / 10 (floored, at least 1) during the first two dense rounds.
std::size_t rho_warmup_adjust(std::size_t dense_rounds_so_far, FrontierMode mode,
                              std::size_t rho, double fraction = 0.1);

/// Sample size c * (frontier / rho + ceil(log2 frontier)).
std::size_t rho_sample_count(std::size_t frontier_size, std::size_t rho, std::size_t c);

/// The ceil(rho * s / frontier)-th smallest of the samples.
Distance select_from_samples(std::vector<Distance> samples, std::size_t rho,
                             std::size_t frontier_size);

/// Estimated rho-th smallest key of `keys` (the whole frontier). Returns the
/// maximum when the frontier has at most rho keys. Throws on empty input.
Distance sample_rho_threshold(std::span<const Distance> keys, std::size_t rho,
                              std::size_t c, Rng& rng);

struct RelaxCounts {
  std::uint64_t attempted = 0;
  std::uint64_t succeeded = 0;
  std::uint64_t edges = 0;
  std::uint64_t expanded = 0;
  bool below_theta = false;  // some write produced a value <= theta
};

/// Pulls into u (when `pull`) then pushes from u; calls on_update(v) for
/// every strictly improved neighbor.
template <typename OnUpdate>
void relax_neighbors(const Graph& g, VertexId u, DistanceMap& dist, bool pull,
                     Distance theta, RelaxCounts& c, OnUpdate&& on_update) {
  const auto nbrs = g.neighbors(u);
  const auto ws = g.neighbor_weights(u);
  if (pull) {
    Distance best = dist.get(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i)
      best = std::min(best, saturating_add(dist.get(nbrs[i]), ws[i]));
    ++c.attempted;
    if (dist.write_min(u, best)) ++c.succeeded;
  }
  const Distance du = dist.get(u);
  c.edges += nbrs.size();
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    const Distance nd = saturating_add(du, ws[i]);
    ++c.attempted;
    if (dist.write_min(nbrs[i], nd)) {
      ++c.succeeded;
      if (nd <= theta) c.below_theta = true;
      on_update(nbrs[i]);
    }
  }
}

/// Worker-local Dijkstra-like expansion from u: vertices reached with a
/// tentative distance <= theta are relaxed in turn until `budget` vertices
/// have been expanded. Improved vertices that were not expanded go to
/// on_update. budget = 1 is plain relaxation of u. `pull` applies to u only.
void local_bfs_neighborhood(const Graph& g, VertexId u, DistanceMap& dist, bool pull,
                            Distance theta, std::size_t budget, RelaxCounts& c,
                            const std::function<void(VertexId)>& on_update);

}  // namespace sssp
