#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sssp/graph.hpp"
#include "sssp/stepping.hpp"

namespace sssp {

struct OracleResult {
  std::vector<Distance> dist;
  std::vector<std::uint32_t> hops;  // fewest edges among shortest paths
  std::uint32_t k_n = 0;            // max hops over reachable vertices
};

/// Sequential binary-heap Dijkstra on (distance, hops) keys.
OracleResult dijkstra_oracle(const Graph& g, VertexId source);

/// n rounds of full relaxation; slow, used to cross-check the oracle.
std::vector<Distance> bellman_ford_oracle(const Graph& g, VertexId source);

/// Truncated lexicographic Dijkstra from v that stops after settling rho
/// vertices (v itself first). Returns the largest hop count among them.
std::uint32_t k_rho_at(const Graph& g, VertexId v, std::size_t rho);

/// Distance from v to its rho-th closest vertex (v is the 1st);
/// kInfDistance when fewer than rho are reachable.
Distance r_rho_at(const Graph& g, VertexId v, std::size_t rho);

struct KRhoEstimate {
  std::size_t rho = 0;
  std::uint32_t k_rho_hat = 0;
  std::size_t samples = 0;
  std::vector<std::uint32_t> per_sample_k;
  bool exact = false;  // every vertex was examined
};

/// Max of k_rho_at over `samples` vertices drawn with replacement.
KRhoEstimate estimate_k_rho(const Graph& g, std::size_t rho, std::size_t samples,
                            std::uint64_t seed);
/// Max of k_rho_at over all vertices (in parallel).
KRhoEstimate exact_k_rho(const Graph& g, std::size_t rho);

/// r_rho(v) for every vertex, computed in parallel.
std::vector<Distance> compute_r_rho_table(const Graph& g, std::size_t rho);

struct BoundCheck {
  std::string name;
  double observed = 0;
  double bound = 0;
  bool pass = false;
};

struct BoundReport {
  std::uint64_t graph_fingerprint = 0;
  std::uint64_t n = 0;
  std::uint64_t arcs = 0;
  bool directed = false;
  Weight max_weight = 0;
  std::string policy;
  std::string backend;
  Distance delta = 0;
  std::size_t rho = 0;
  bool exact_selector = false;
  std::uint32_t k_n = 0;
  std::optional<KRhoEstimate> krho;
  std::vector<BoundCheck> checks;

  bool pass() const;
  /// Fields: graph, policy, params, observed, bound, pass, checks,
  /// schema_version.
  std::string to_json(int indent = 2) const;
};

/// Bumped whenever a report field is renamed or removed.
inline constexpr int kReportSchemaVersion = 1;

/// Envelope constant for the tree work checks.
inline constexpr double kTreeWorkConstant = 4.0;

/// Checks one run against the applicable bounds:
/// max extractions <= max(k_n, 1); Bellman-Ford steps <= k_n + 1;
/// Delta* steps <= ceil(k_n L / Delta) + k_n; exact-rho undirected steps
/// <= (2 k_rho + 3) ceil(n / rho) when `krho` is given; tree work
/// <= 4 U' (1 + log2(n S / U')) with U' = successful relaxations + 1 and S
/// extract rounds. Throws Error(kInvalidArgument) when the run belongs to
/// another graph.
BoundReport bound_report(const Graph& g, const SteppingPolicy& policy, const RunConfig& cfg,
                         const RunStats& stats, const OracleResult& oracle,
                         const std::optional<KRhoEstimate>& krho);

}  // namespace sssp
