#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <thread>

#include "sssp/analysis.hpp"
#include "sssp/error.hpp"
#include "sssp/parallel.hpp"
#include "sssp/stepping.hpp"
#include "support/graphs.hpp"

namespace sssp {
namespace {

// --- write_min ---------------------------------------------------------------

TEST(WriteMin, LowersOnlyWhenSmaller) {
  std::atomic<Distance> cell{10};
  EXPECT_TRUE(write_min(cell, 5));
  EXPECT_EQ(cell.load(), 5u);
  EXPECT_FALSE(write_min(cell, 7));
  EXPECT_FALSE(write_min(cell, 5));
  EXPECT_EQ(cell.load(), 5u);
}

TEST(WriteMin, ConcurrentWritersLeaveMinimumAndOneWinnerForIt) {
  std::atomic<Distance> cell{kInfDistance};
  std::atomic<int> winners{0};
  std::vector<std::thread> ws;
  for (int w = 0; w < 4; ++w)
    ws.emplace_back([&, w] {
      for (Distance v = 1000 + w; v >= 2; --v) write_min(cell, v);
      if (write_min(cell, 1)) ++winners;
    });
  for (auto& th : ws) th.join();
  EXPECT_EQ(cell.load(), 1u);
  EXPECT_EQ(winners.load(), 1);
}

// --- name parsing ------------------------------------------------------------

TEST(SteppingNames, RoundTrip) {
  for (auto a : {Algorithm::kDijkstra, Algorithm::kBellmanFord, Algorithm::kDelta,
                 Algorithm::kDeltaStar, Algorithm::kRho, Algorithm::kRadius})
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  EXPECT_EQ(parse_algorithm("bf"), Algorithm::kBellmanFord);
  EXPECT_EQ(parse_backend("array"), Backend::kArray);
  EXPECT_THROW(parse_algorithm("astar"), Error);
  EXPECT_THROW(parse_backend("heap"), Error);
}

// --- small graphs ------------------------------------------------------------

std::vector<SteppingPolicy> all_policies(const Graph& g, std::size_t rho) {
  const Distance L = std::max<Distance>(1, g.max_weight());
  return {SteppingPolicy::dijkstra(),
          SteppingPolicy::bellman_ford(),
          SteppingPolicy::delta_stepping(L),
          SteppingPolicy::delta_star(L),
          SteppingPolicy::rho_stepping(rho),
          SteppingPolicy::rho_stepping(rho, RhoSelector::kExact),
          SteppingPolicy::radius_stepping(rho, compute_r_rho_table(g, rho))};
}

TEST(Stepping, ChainDistancesEveryPolicy) {
  const Graph g = make_chain(5);
  for (const auto& p : all_policies(g, 2))
    for (Backend b : {Backend::kTree, Backend::kArray}) {
      RunConfig cfg;
      cfg.backend = b;
      const auto r = run_sssp(g, 0, p, cfg);
      EXPECT_EQ(r.dist, (std::vector<Distance>{0, 1, 2, 3, 4})) << to_string(p.kind);
    }
}

TEST(Stepping, DisconnectedVerticesStayInfinite) {
  EdgeList e;
  e.n = 5;
  e.edges = {{0, 1, 3}, {3, 4, 1}};
  const Graph g = build_csr(e, false);
  for (const auto& p : all_policies(g, 2)) {
    const auto r = run_sssp(g, 0, p);
    EXPECT_EQ(r.dist, (std::vector<Distance>{0, 3, kInfDistance, kInfDistance, kInfDistance}));
  }
}

TEST(Stepping, BellmanFordChainOneVertexPerRound) {
  const auto r = run_sssp(make_chain(5), 0, SteppingPolicy::bellman_ford());
  ASSERT_EQ(r.stats.rounds.size(), 5u);
  for (const auto& round : r.stats.rounds) EXPECT_EQ(round.visited_v, 1u);
  EXPECT_EQ(r.stats.steps, 5u);
  EXPECT_EQ(r.stats.max_extractions(), 1u);
}

TEST(Stepping, DijkstraStepsEqualDistinctDistances) {
  const Graph g = testing::random_graph(400, 1600, 9, false, 1, 8);
  const auto r = run_sssp(g, 0, SteppingPolicy::dijkstra());
  std::set<Distance> classes;
  for (Distance d : r.dist)
    if (d != kInfDistance) classes.insert(d);
  EXPECT_EQ(r.stats.steps, classes.size());
  EXPECT_EQ(r.stats.max_extractions(), 1u);
}

TEST(Stepping, SingleVertexGraph) {
  EdgeList e;
  e.n = 1;
  const Graph g = build_csr(e, false);
  const auto r = run_sssp(g, 0, SteppingPolicy::rho_stepping(4));
  EXPECT_EQ(r.dist, (std::vector<Distance>{0}));
}

TEST(Stepping, InvalidArguments) {
  const Graph g = make_chain(3);
  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::kIo;  // sentinel: no throw
  };
  EXPECT_EQ(kind_of([&] { run_sssp(g, 3, SteppingPolicy::dijkstra()); }),
            ErrorKind::kInvalidArgument);
  EXPECT_EQ(kind_of([&] { run_sssp(g, 0, SteppingPolicy::delta_star(0)); }),
            ErrorKind::kInvalidArgument);
  EXPECT_EQ(kind_of([&] { run_sssp(g, 0, SteppingPolicy::rho_stepping(0)); }),
            ErrorKind::kInvalidArgument);
  EXPECT_EQ(kind_of([&] { run_sssp(g, 0, SteppingPolicy::radius_stepping(2, {1, 2})); }),
            ErrorKind::kConfig);
}

// --- oracle agreement --------------------------------------------------------

TEST(Stepping, AllPoliciesMatchOracleOnRandomGraphs) {
  par::ThreadScope scope(4);
  for (std::uint64_t seed = 1; seed <= 6; ++seed)
    for (bool directed : {false, true}) {
      const Graph g = testing::random_graph(300, 1500, seed, directed);
      const auto oracle = dijkstra_oracle(g, 0);
      for (const auto& p : all_policies(g, 16))
        for (Backend b : {Backend::kTree, Backend::kArray})
          for (double thr : {0.0, 0.05, 1e18})
            for (bool fusion : {false, true}) {
              RunConfig cfg;
              cfg.backend = b;
              cfg.sparse_dense_threshold = thr;
              cfg.fusion = fusion;
              cfg.bidirectional = seed % 2 == 0;
              cfg.threads = 4;
              const auto r = run_sssp(g, 0, p, cfg);
              ASSERT_EQ(r.dist, oracle.dist)
                  << "seed " << seed << " directed " << directed << " "
                  << to_string(p.kind) << " " << to_string(b) << " thr " << thr;
              EXPECT_LE(r.stats.max_extractions(), std::max<std::uint32_t>(oracle.k_n, 1));
            }
    }
}

TEST(Stepping, RunsAreDeterministicAcrossThreadCounts) {
  const Graph g = testing::random_graph(2000, 10000, 4, false);
  RunConfig one;
  one.threads = 1;
  const auto a = run_sssp(g, 3, SteppingPolicy::rho_stepping(64), one);
  RunConfig four;
  four.threads = 4;
  const auto b = run_sssp(g, 3, SteppingPolicy::rho_stepping(64), four);
  EXPECT_EQ(distance_checksum(a.dist), distance_checksum(b.dist));
}

// --- threshold sampling ------------------------------------------------------

TEST(RhoSampling, FewerKeysThanRhoGivesMaximum) {
  Rng rng(1);
  const std::vector<Distance> keys{4, 9, 1, 7, 3};
  EXPECT_EQ(sample_rho_threshold(keys, 10, 10, rng), 9u);
  EXPECT_EQ(sample_rho_threshold(keys, 5, 10, rng), 9u);
}

TEST(RhoSampling, EqualKeysGiveThatKey) {
  Rng rng(2);
  const std::vector<Distance> keys(5000, 42);
  EXPECT_EQ(sample_rho_threshold(keys, 100, 10, rng), 42u);
}

TEST(RhoSampling, EmptyFrontierRejected) {
  Rng rng(3);
  EXPECT_THROW(sample_rho_threshold({}, 1, 10, rng), Error);
}

TEST(RhoSampling, SampleCountFormula) {
  // 10 * (10000 / 1000 + ceil(log2 10000)) = 10 * (10 + 14)
  EXPECT_EQ(rho_sample_count(10000, 1000, 10), 240u);
  EXPECT_EQ(rho_sample_count(1, 1, 10), 10u);
  EXPECT_EQ(rho_sample_count(1024, 2048, 1), 10u);
}

TEST(RhoSampling, SelectsCeilRankOfSamples) {
  std::vector<Distance> s{50, 10, 40, 20, 30};
  // ceil(2 * 5 / 4) = 3rd smallest.
  EXPECT_EQ(select_from_samples(s, 2, 4), 30u);
  EXPECT_EQ(select_from_samples(s, 1, 1000), 10u);
  EXPECT_THROW(select_from_samples({}, 1, 1), Error);
}

TEST(RhoSampling, RankUsuallyWithinFactorTwo) {
  Rng rng(77);
  constexpr std::size_t frontier = 10000, rho = 1000;
  std::vector<Distance> keys(frontier);
  for (std::size_t i = 0; i < frontier; ++i) keys[i] = i;
  std::shuffle(keys.begin(), keys.end(), rng);
  int ok = 0;
  for (int t = 0; t < 100; ++t) {
    const Distance th = sample_rho_threshold(keys, rho, 10, rng);
    const std::size_t rank = th + 1;  // keys are 0..frontier-1
    if (rank >= rho / 2 && rank <= 2 * rho) ++ok;
  }
  EXPECT_GE(ok, 95);
}

TEST(RhoWarmup, FirstTwoDenseRoundsUseReducedRho) {
  const std::size_t rho = std::size_t{1} << 21;
  EXPECT_EQ(rho_warmup_adjust(0, FrontierMode::kDense, rho), 209715u);
  EXPECT_EQ(rho_warmup_adjust(1, FrontierMode::kDense, rho), 209715u);
  EXPECT_EQ(rho_warmup_adjust(2, FrontierMode::kDense, rho), rho);
  EXPECT_EQ(rho_warmup_adjust(0, FrontierMode::kSparse, rho), rho);
  EXPECT_EQ(rho_warmup_adjust(0, FrontierMode::kSuperSparse, rho), rho);
  EXPECT_EQ(rho_warmup_adjust(0, FrontierMode::kDense, 5), 1u);
}

// --- frontier modes ----------------------------------------------------------

TEST(FrontierModes, SelectModeExamples) {
  RunConfig cfg;  // threshold 1/20, degree 20
  EXPECT_EQ(select_mode(10, 30, 1000, 20000, cfg), FrontierMode::kSuperSparse);
  EXPECT_EQ(select_mode(10, 300, 1000, 20000, cfg), FrontierMode::kSparse);
  EXPECT_EQ(select_mode(100, 901, 1000, 20000, cfg), FrontierMode::kDense);
  // Exactly at the threshold stays sparse.
  EXPECT_EQ(select_mode(40, 960, 1000, 20000, cfg), FrontierMode::kSparse);
  cfg.sparse_dense_threshold = 0;
  EXPECT_EQ(select_mode(1, 0, 1000, 20000, cfg), FrontierMode::kDense);
}

TEST(FrontierModes, ForcedModesRecorded) {
  const Graph g = testing::random_graph(500, 3000, 2, false);
  RunConfig dense;
  dense.sparse_dense_threshold = 0;
  for (const auto& r : run_sssp(g, 0, SteppingPolicy::bellman_ford(), dense).stats.rounds)
    EXPECT_EQ(r.mode, FrontierMode::kDense);
  RunConfig sparse;
  sparse.sparse_dense_threshold = 1e18;
  sparse.super_sparse_degree = 0;
  for (const auto& r : run_sssp(g, 0, SteppingPolicy::bellman_ford(), sparse).stats.rounds)
    EXPECT_EQ(r.mode, FrontierMode::kSparse);
}

// --- bidirectional relaxation ------------------------------------------------

TEST(Bidirectional, PullTakesBestNeighbor) {
  const Graph g = make_star(3);  // center 0, leaves 1..3, weight 1
  DistanceMap d(4);
  d.set(1, 1);
  d.set(2, 5);
  RelaxCounts c;
  std::vector<VertexId> updated;
  relax_neighbors(g, 0, d, true, kInfDistance, c, [&](VertexId v) { updated.push_back(v); });
  EXPECT_EQ(d.get(0), 2u);
  EXPECT_EQ(d.get(3), 3u);
  EXPECT_EQ(d.get(2), 3u);
  EXPECT_EQ(updated, (std::vector<VertexId>{2, 3}));
}

TEST(Bidirectional, IgnoredOnDirectedGraphs) {
  const Graph g = testing::random_graph(200, 800, 5, true);
  RunConfig cfg;
  cfg.bidirectional = true;
  const auto r = run_sssp(g, 0, SteppingPolicy::delta_star(1000), cfg);
  EXPECT_TRUE(r.stats.bidirectional_ignored);
  EXPECT_EQ(r.dist, dijkstra_oracle(g, 0).dist);
  const auto u = run_sssp(testing::random_graph(200, 800, 5, false), 0,
                          SteppingPolicy::delta_star(1000), cfg);
  EXPECT_FALSE(u.stats.bidirectional_ignored);
}

// --- fusion ------------------------------------------------------------------

TEST(Fusion, LocalSearchSettlesChainInOneCall) {
  const Graph g = make_chain(10);
  DistanceMap d(10);
  d.set(0, 0);
  RelaxCounts c;
  int handed_back = 0;
  local_bfs_neighborhood(g, 0, d, false, kInfDistance, 100, c,
                         [&](VertexId) { ++handed_back; });
  for (VertexId v = 0; v < 10; ++v) EXPECT_EQ(d.get(v), v);
  EXPECT_EQ(handed_back, 0);
  EXPECT_EQ(c.expanded, 10u);
}

TEST(Fusion, BudgetOneIsPlainRelaxation) {
  const Graph g = make_chain(10);
  DistanceMap d(10);
  d.set(0, 0);
  RelaxCounts c;
  std::vector<VertexId> handed_back;
  local_bfs_neighborhood(g, 0, d, false, kInfDistance, 1, c,
                         [&](VertexId v) { handed_back.push_back(v); });
  EXPECT_EQ(d.get(1), 1u);
  EXPECT_EQ(d.get(2), kInfDistance);
  EXPECT_EQ(handed_back, (std::vector<VertexId>{1}));
}

TEST(Fusion, StopsAboveThreshold) {
  const Graph g = make_chain(10);
  DistanceMap d(10);
  d.set(0, 0);
  RelaxCounts c;
  std::vector<VertexId> handed_back;
  local_bfs_neighborhood(g, 0, d, false, 3, 100, c,
                         [&](VertexId v) { handed_back.push_back(v); });
  EXPECT_EQ(d.get(4), 4u);
  EXPECT_EQ(d.get(5), kInfDistance);
  EXPECT_EQ(handed_back, (std::vector<VertexId>{4}));
}

}  // namespace
}  // namespace sssp
