#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "sssp/types.hpp"

namespace sssp {

struct WeightedEdge {
  VertexId src;
  VertexId dst;
  Weight w;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Raw edge list as read or generated; not yet validated against the graph
/// invariants (build_csr does that).
struct EdgeList {
  std::uint64_t n = 0;
  std::vector<WeightedEdge> edges;
};

/// Immutable weighted graph in compressed-sparse-row form. Undirected graphs
/// store both arc directions. Neighbor lists are sorted by target id.
class Graph {
 public:
  Graph() = default;
  Graph(std::vector<EdgeIndex> offsets, std::vector<VertexId> targets,
        std::vector<Weight> weights, bool directed);

  std::uint64_t num_vertices() const noexcept { return n_; }
  /// Number of stored arcs (2x the edge count for undirected graphs).
  std::uint64_t num_arcs() const noexcept { return targets_.size(); }
  bool directed() const noexcept { return directed_; }
  /// Largest arc weight (L); 0 for a graph without arcs.
  Weight max_weight() const noexcept { return max_weight_; }

  std::uint64_t degree(VertexId v) const noexcept {
    return offsets_[v + 1] - offsets_[v];
  }
  std::span<const VertexId> neighbors(VertexId v) const noexcept {
    return {targets_.data() + offsets_[v], degree(v)};
  }
  std::span<const Weight> neighbor_weights(VertexId v) const noexcept {
    return {weights_.data() + offsets_[v], degree(v)};
  }

  std::span<const EdgeIndex> offsets() const noexcept { return offsets_; }
  std::span<const VertexId> targets() const noexcept { return targets_; }
  std::span<const Weight> weights() const noexcept { return weights_; }

  /// Stable 64-bit digest of the CSR arrays; identifies a graph in reports.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.directed_ == b.directed_ && a.offsets_ == b.offsets_ &&
           a.targets_ == b.targets_ && a.weights_ == b.weights_;
  }

 private:
  std::uint64_t n_ = 0;
  bool directed_ = false;
  Weight max_weight_ = 0;
  std::uint64_t fingerprint_ = 0;
  std::vector<EdgeIndex> offsets_{0};
  std::vector<VertexId> targets_;
  std::vector<Weight> weights_;
};

/// Parses `u v w` lines. `#` and `c` lines are comments; an optional
/// `p <n> <m>` header fixes the vertex count. Throws Error(kParse) with the
/// line number on malformed input, Error(kRange) for ids outside the header.
EdgeList parse_edge_list(std::string_view text);
EdgeList read_edge_list(const std::filesystem::path& path);
void write_edge_list(const EdgeList& e, std::ostream& out);

/// `m` distinct vertex pairs without self-loops, each with a random
/// orientation and weight 1. Deterministic in `seed`.
EdgeList generate_random_graph(std::uint64_t n, std::uint64_t m,
                               std::uint64_t seed);

inline constexpr Weight kDefaultMinWeight = 1;
inline constexpr Weight kDefaultMaxWeightExclusive = Weight{1} << 18;

/// Redraws every weight uniformly from [lo, hi).
EdgeList assign_uniform_weights(EdgeList e, std::uint64_t seed,
                                Weight lo = kDefaultMinWeight,
                                Weight hi = kDefaultMaxWeightExclusive);

/// Validates `e` and builds the canonical CSR. Self-loops are dropped and
/// parallel edges collapse to their lightest copy.
Graph build_csr(const EdgeList& e, bool directed);

/// Inverse of build_csr up to canonical form: one entry per stored arc for
/// directed graphs, one per {u, v} pair (u < v) for undirected ones.
EdgeList to_edge_list(const Graph& g);

void save_binary(const Graph& g, const std::filesystem::path& path);
Graph load_binary(const std::filesystem::path& path);
void write_binary(const Graph& g, std::ostream& out);
Graph read_binary(std::istream& in);

/// Reads either format, detected from the leading magic bytes.
Graph load_graph(const std::filesystem::path& path, bool directed_if_text);

// Small deterministic families used by tests and the CLI.
Graph make_chain(std::uint64_t n, Weight w = 1, bool directed = false);
Graph make_star(std::uint64_t leaves, Weight w = 1);
Graph make_grid(std::uint64_t rows, std::uint64_t cols, std::uint64_t seed,
                Weight lo = 1, Weight hi = 2);

}  // namespace sssp
