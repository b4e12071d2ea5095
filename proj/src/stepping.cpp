#include "sssp/stepping.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <numeric>
#include <optional>
#include <queue>

#include "sssp/array_pq.hpp"
#include "sssp/error.hpp"
#include "sssp/parallel.hpp"

namespace sssp {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kDijkstra: return "dijkstra";
    case Algorithm::kBellmanFord: return "bellman-ford";
    case Algorithm::kDelta: return "delta";
    case Algorithm::kDeltaStar: return "delta-star";
    case Algorithm::kRho: return "rho";
    case Algorithm::kRadius: return "radius";
  }
  return "unknown";
}

std::string_view to_string(Backend b) { return b == Backend::kTree ? "tree" : "array"; }

Algorithm parse_algorithm(std::string_view name) {
  for (auto a : {Algorithm::kDijkstra, Algorithm::kBellmanFord, Algorithm::kDelta,
                 Algorithm::kDeltaStar, Algorithm::kRho, Algorithm::kRadius})
    if (to_string(a) == name) return a;
  if (name == "bf") return Algorithm::kBellmanFord;
  fail(ErrorKind::kInvalidArgument, "unknown algorithm '" + std::string(name) + "'");
}

Backend parse_backend(std::string_view name) {
  if (name == "tree") return Backend::kTree;
  if (name == "array") return Backend::kArray;
  fail(ErrorKind::kInvalidArgument, "unknown backend '" + std::string(name) + "'");
}

std::uint32_t RunStats::max_extractions() const {
  std::uint32_t best = 0;
  for (auto c : extractions_per_vertex) best = std::max(best, c);
  return best;
}

std::uint64_t RunStats::total_extractions() const {
  return std::accumulate(extractions_per_vertex.begin(), extractions_per_vertex.end(),
                         std::uint64_t{0});
}

std::uint64_t distance_checksum(std::span<const Distance> dist) {
  std::uint64_t sum = 0;
  for (Distance d : dist) sum += d;
  return sum;
}

FrontierMode select_mode(std::uint64_t frontier_size, std::uint64_t incident_edges,
                         std::uint64_t /*n*/, std::uint64_t m, const RunConfig& cfg) {
  const double load = static_cast<double>(frontier_size) + static_cast<double>(incident_edges);
  if (load > cfg.sparse_dense_threshold * static_cast<double>(m)) return FrontierMode::kDense;
  if (frontier_size > 0 &&
      static_cast<double>(incident_edges) / static_cast<double>(frontier_size) <
          cfg.super_sparse_degree)
    return FrontierMode::kSuperSparse;
  return FrontierMode::kSparse;
}

std::size_t rho_warmup_adjust(std::size_t dense_rounds_so_far, FrontierMode mode,
                              std::size_t rho, double fraction) {
  if (mode != FrontierMode::kDense || dense_rounds_so_far >= 2) return rho;
  const auto reduced = static_cast<std::size_t>(std::floor(static_cast<double>(rho) * fraction));
  return std::max<std::size_t>(1, reduced);
}

std::size_t rho_sample_count(std::size_t frontier_size, std::size_t rho, std::size_t c) {
  const std::size_t log_term =
      frontier_size <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(frontier_size - 1));
  return std::max<std::size_t>(1, c * (frontier_size / std::max<std::size_t>(rho, 1) + log_term));
}

Distance select_from_samples(std::vector<Distance> samples, std::size_t rho,
                             std::size_t frontier_size) {
  if (samples.empty()) fail(ErrorKind::kInvalidArgument, "no samples to select from");
  const std::size_t s = samples.size();
  // ceil(rho * s / frontier), as a 1-based rank clamped to [1, s].
  const auto num = static_cast<unsigned __int128>(rho) * s;
  std::size_t rank = static_cast<std::size_t>((num + frontier_size - 1) / frontier_size);
  rank = std::clamp<std::size_t>(rank, 1, s);
  std::nth_element(samples.begin(), samples.begin() + (rank - 1), samples.end());
  return samples[rank - 1];
}

Distance sample_rho_threshold(std::span<const Distance> keys, std::size_t rho,
                              std::size_t c, Rng& rng) {
  if (keys.empty()) fail(ErrorKind::kInvalidArgument, "empty frontier");
  if (keys.size() <= rho) return *std::max_element(keys.begin(), keys.end());
  const std::size_t s = rho_sample_count(keys.size(), rho, c);
  std::vector<Distance> samples(s);
  for (auto& x : samples) x = keys[uniform_below(rng, keys.size())];
  return select_from_samples(std::move(samples), rho, keys.size());
}

void local_bfs_neighborhood(const Graph& g, VertexId u, DistanceMap& dist, bool pull,
                            Distance theta, std::size_t budget, RelaxCounts& c,
                            const std::function<void(VertexId)>& on_update) {
  using Entry = std::pair<Distance, VertexId>;
  thread_local std::vector<Entry> heap;
  heap.clear();
  const auto cmp = std::greater<Entry>{};

  if (pull) {
    const auto nbrs = g.neighbors(u);
    const auto ws = g.neighbor_weights(u);
    Distance best = dist.get(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i)
      best = std::min(best, saturating_add(dist.get(nbrs[i]), ws[i]));
    ++c.attempted;
    if (dist.write_min(u, best)) ++c.succeeded;
  }

  heap.emplace_back(dist.get(u), u);
  std::size_t expanded = 0;
  bool first = true;
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), cmp);
    const auto [d, x] = heap.back();
    heap.pop_back();
    // Someone lowered x since; that writer owns it now.
    if (dist.get(x) < d) continue;
    if (!first && (d > theta || expanded >= budget)) {
      if (d <= theta) c.below_theta = true;
      on_update(x);
      continue;
    }
    first = false;
    ++expanded;
    const auto nbrs = g.neighbors(x);
    const auto ws = g.neighbor_weights(x);
    c.edges += nbrs.size();
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const Distance nd = saturating_add(d, ws[i]);
      ++c.attempted;
      if (dist.write_min(nbrs[i], nd)) {
        ++c.succeeded;
        heap.emplace_back(nd, nbrs[i]);
        std::push_heap(heap.begin(), heap.end(), cmp);
      }
    }
  }
  c.expanded += expanded;
}

namespace {

void validate(const Graph& g, VertexId source, const SteppingPolicy& p) {
  if (source >= g.num_vertices())
    fail(ErrorKind::kInvalidArgument, "source " + std::to_string(source) + " out of range [0, " +
                                          std::to_string(g.num_vertices()) + ")");
  switch (p.kind) {
    case Algorithm::kDelta:
    case Algorithm::kDeltaStar:
      if (p.delta == 0) fail(ErrorKind::kInvalidArgument, "delta must be >= 1");
      break;
    case Algorithm::kRho:
      if (p.rho == 0) fail(ErrorKind::kInvalidArgument, "rho must be >= 1");
      break;
    case Algorithm::kRadius:
      if (p.radii.size() != g.num_vertices())
        fail(ErrorKind::kConfig, "radius-stepping needs a radius table of length n");
      break;
    default:
      break;
  }
}

Distance saturating_mul(Distance a, Distance b) {
  if (a != 0 && b > kInfDistance / a) return kInfDistance;
  return a * b;
}

template <typename Queue>
class Runner {
 public:
  Runner(const Graph& g, const SteppingPolicy& p, const RunConfig& cfg, DistanceMap& dist,
         Queue& q, RunStats& stats)
      : g_(g), p_(p), cfg_(cfg), dist_(dist), q_(q), stats_(stats), rng_(cfg.seed) {}

  void run(VertexId source) {
    const std::size_t n = g_.num_vertices();
    const bool pull = cfg_.bidirectional && !g_.directed();
    stats_.bidirectional_ignored = cfg_.bidirectional && g_.directed();
    const bool fusion_policy =
        p_.kind == Algorithm::kDeltaStar || p_.kind == Algorithm::kRho;
    stats_.extractions_per_vertex.assign(n, 0);

    dist_.set(source, 0);
    q_.update(source);
    bool recompute = true;
    Distance theta = 0;
    while (!q_.empty()) {
      bool extract_all = false;
      if (recompute) {
        theta = next_threshold(extract_all);
        ++stats_.steps;
      } else {
        ++stats_.substeps;
      }
      auto frontier = q_.extract(extract_all ? kInfDistance : theta);
      if (extract_all) {
        theta = 0;
        for (VertexId u : frontier) theta = std::max(theta, dist_.get(u));
      }

      std::uint64_t edges = 0;
      for (VertexId u : frontier) {
        ++stats_.extractions_per_vertex[u];
        edges += g_.degree(u);
      }
      const FrontierMode mode =
          select_mode(frontier.size(), edges, n, g_.num_arcs(), cfg_);
      q_.begin_round(mode);

      const bool fuse = fusion_policy && cfg_.fusion && cfg_.fusion_budget > 0 &&
                        mode == FrontierMode::kSuperSparse;
      const RelaxCounts c = relax(frontier, theta, pull, fuse);
      stats_.relaxations_attempted += c.attempted;
      stats_.relaxations_succeeded += c.succeeded;
      if (fuse) stats_.fused_expansions += c.expanded;
      stats_.rounds.push_back(
          {mode, theta, frontier.size(), c.edges, !recompute});

      switch (p_.kind) {
        case Algorithm::kDelta:
          // Stay on this bucket while relaxations landed inside it.
          recompute = !c.below_theta;
          if (recompute) ++bucket_;
          break;
        case Algorithm::kRadius:
          recompute = !c.below_theta;
          break;
        case Algorithm::kDeltaStar:
          ++bucket_;
          recompute = true;
          break;
        default:
          recompute = true;
      }
    }
  }

 private:
  Distance next_threshold(bool& extract_all) {
    switch (p_.kind) {
      case Algorithm::kDijkstra:
        return q_.min_key();
      case Algorithm::kBellmanFord:
        return kInfDistance;
      case Algorithm::kDelta:
      case Algorithm::kDeltaStar: {
        Distance theta = saturating_mul(bucket_, p_.delta);
        const Distance lo = q_.min_key();
        if (lo > theta) {
          // Skip empty buckets.
          bucket_ = lo / p_.delta + (lo % p_.delta != 0 ? 1 : 0);
          theta = saturating_mul(bucket_, p_.delta);
        }
        return theta;
      }
      case Algorithm::kRadius:
        return q_.reduce();
      case Algorithm::kRho:
        return rho_threshold(extract_all);
    }
    return kInfDistance;
  }

  Distance rho_threshold(bool& extract_all) {
    const std::size_t queued = q_.size();
    std::size_t rho = p_.rho;
    if (p_.selector == RhoSelector::kSampled && cfg_.rho_warmup) {
      const std::uint64_t n = g_.num_vertices();
      const std::uint64_t predicted = std::min<std::uint64_t>(rho, queued);
      const std::uint64_t predicted_edges =
          n == 0 ? 0 : predicted * g_.num_arcs() / n;
      const FrontierMode guess =
          select_mode(predicted, predicted_edges, n, g_.num_arcs(), cfg_);
      rho = rho_warmup_adjust(dense_rounds_, guess, rho, cfg_.dense_warmup_fraction);
      if (guess == FrontierMode::kDense) ++dense_rounds_;
    }
    if (queued <= rho) {
      extract_all = true;
      return kInfDistance;
    }
    if (p_.selector == RhoSelector::kExact) {
      auto keys = q_.snapshot_keys();
      std::nth_element(keys.begin(), keys.begin() + (rho - 1), keys.end());
      return keys[rho - 1];
    }
    const std::size_t s = rho_sample_count(queued, rho, cfg_.rho_sample_constant);
    return select_from_samples(q_.sample_keys(s, rng_), rho, queued);
  }

  RelaxCounts relax(const std::vector<VertexId>& frontier, Distance theta, bool pull,
                    bool fuse) {
    auto push = [this](VertexId v) { q_.update(v); };
    const std::function<void(VertexId)> push_fn = push;
    auto process = [&](VertexId u, RelaxCounts& c) {
      if (fuse)
        local_bfs_neighborhood(g_, u, dist_, pull, theta, cfg_.fusion_budget, c, push_fn);
      else
        relax_neighbors(g_, u, dist_, pull, theta, c, push);
    };

    RelaxCounts total;
    const int workers = par::num_workers();
    const auto count = static_cast<std::int64_t>(frontier.size());
    if (workers <= 1 || count < 2) {
      for (VertexId u : frontier) process(u, total);
      return total;
    }
#pragma omp parallel num_threads(workers)
    {
      RelaxCounts local;
#pragma omp for schedule(dynamic, 16) nowait
      for (std::int64_t i = 0; i < count; ++i) process(frontier[i], local);
#pragma omp critical(sssp_relax_merge)
      {
        total.attempted += local.attempted;
        total.succeeded += local.succeeded;
        total.edges += local.edges;
        total.expanded += local.expanded;
        total.below_theta = total.below_theta || local.below_theta;
      }
    }
    return total;
  }

  const Graph& g_;
  const SteppingPolicy& p_;
  const RunConfig& cfg_;
  DistanceMap& dist_;
  Queue& q_;
  RunStats& stats_;
  Rng rng_;
  Distance bucket_ = 1;
  std::size_t dense_rounds_ = 0;
};

}  // namespace

RunResult run_sssp(const Graph& g, VertexId source, const SteppingPolicy& policy,
                   const RunConfig& cfg) {
  validate(g, source, policy);
  par::ThreadScope scope(cfg.threads);
  const auto start = std::chrono::steady_clock::now();

  const std::size_t n = g.num_vertices();
  DistanceMap dist(n);
  std::optional<AugmentedMonoid> aug;
  if (policy.kind == Algorithm::kRadius) aug = AugmentedMonoid::min_key_plus(policy.radii);

  RunResult result;
  result.stats.graph_fingerprint = g.fingerprint();
  if (cfg.backend == Backend::kTree) {
    TournamentTree q(dist, n, aug);
    Runner<TournamentTree>(g, policy, cfg, dist, q, result.stats).run(source);
    result.stats.tree = q.counters();
  } else {
    ArrayPq q(dist, n, aug);
    Runner<ArrayPq>(g, policy, cfg, dist, q, result.stats).run(source);
  }
  result.dist = dist.snapshot();
  result.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace sssp
