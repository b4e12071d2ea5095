// Exercises the shared library strictly through its C interface.

#include <gtest/gtest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <unistd.h>

#include "sssp/sssp.h"

namespace {

struct GraphDel {
  void operator()(sssp_graph* g) const { sssp_graph_free(g); }
};
struct ResultDel {
  void operator()(sssp_result* r) const { sssp_result_free(r); }
};
struct OracleDel {
  void operator()(sssp_oracle* o) const { sssp_oracle_free(o); }
};
using GraphPtr = std::unique_ptr<sssp_graph, GraphDel>;
using ResultPtr = std::unique_ptr<sssp_result, ResultDel>;
using OraclePtr = std::unique_ptr<sssp_oracle, OracleDel>;

GraphPtr generate(uint64_t n, uint64_t m, uint64_t seed, int directed = 0) {
  sssp_graph* g = nullptr;
  EXPECT_EQ(sssp_graph_generate(n, m, seed, 1, 1u << 18, directed, &g), SSSP_OK)
      << sssp_last_error_message();
  return GraphPtr(g);
}

ResultPtr run(const sssp_graph* g, uint32_t source, const sssp_options& o) {
  sssp_result* r = nullptr;
  EXPECT_EQ(sssp_run(g, source, &o, &r), SSSP_OK) << sssp_last_error_message();
  return ResultPtr(r);
}

OraclePtr oracle(const sssp_graph* g, uint32_t source) {
  sssp_oracle* o = nullptr;
  EXPECT_EQ(sssp_oracle_run(g, source, &o), SSSP_OK);
  return OraclePtr(o);
}

std::filesystem::path temp_path(const char* name) {
  return std::filesystem::temp_directory_path() /
         (std::string("sssp_capi_") + std::to_string(::getpid()) + "_" + name);
}

TEST(CApi, StatusStrings) {
  EXPECT_STREQ(sssp_status_string(SSSP_OK), "ok");
  for (int s = 1; s <= 10; ++s)
    EXPECT_GT(std::strlen(sssp_status_string(static_cast<sssp_status>(s))), 0u);
}

TEST(CApi, GenerateAndInspect) {
  auto g = generate(100, 300, 5);
  EXPECT_EQ(sssp_graph_num_vertices(g.get()), 100u);
  EXPECT_EQ(sssp_graph_num_arcs(g.get()), 600u);
  EXPECT_EQ(sssp_graph_directed(g.get()), 0);
  EXPECT_GE(sssp_graph_max_weight(g.get()), 1u);
  auto h = generate(100, 300, 5);
  EXPECT_EQ(sssp_graph_fingerprint(g.get()), sssp_graph_fingerprint(h.get()));
  auto d = generate(100, 300, 5, 1);
  EXPECT_EQ(sssp_graph_num_arcs(d.get()), 300u);
}

TEST(CApi, InfeasibleGenerationReportsStatusAndMessage) {
  sssp_graph* g = nullptr;
  EXPECT_EQ(sssp_graph_generate(3, 10, 1, 1, 10, 0, &g), SSSP_ERR_INFEASIBLE);
  EXPECT_EQ(g, nullptr);
  EXPECT_GT(std::strlen(sssp_last_error_message()), 0u);
}

TEST(CApi, NullArgumentsRejected) {
  EXPECT_EQ(sssp_graph_chain(5, 1, 0, nullptr), SSSP_ERR_INVALID_ARGUMENT);
  sssp_options o;
  sssp_options_init(&o);
  sssp_result* r = nullptr;
  EXPECT_EQ(sssp_run(nullptr, 0, &o, &r), SSSP_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(sssp_last_error_message()).find("NULL"), std::string::npos);
}

TEST(CApi, FromEdgesValidatesIds) {
  const uint32_t src[] = {0, 1}, dst[] = {1, 7}, w[] = {1, 1};
  sssp_graph* g = nullptr;
  EXPECT_EQ(sssp_graph_from_edges(3, src, dst, w, 2, 0, &g), SSSP_ERR_RANGE);
  const uint32_t dst_ok[] = {1, 2};
  ASSERT_EQ(sssp_graph_from_edges(3, src, dst_ok, w, 2, 0, &g), SSSP_OK);
  GraphPtr owned(g);
  EXPECT_EQ(sssp_graph_num_arcs(g), 4u);
}

TEST(CApi, ChainRunAllAlgorithms) {
  sssp_graph* raw = nullptr;
  ASSERT_EQ(sssp_graph_chain(6, 2, 0, &raw), SSSP_OK);
  GraphPtr g(raw);
  for (int a = SSSP_ALGO_DIJKSTRA; a <= SSSP_ALGO_RADIUS; ++a)
    for (int b = SSSP_BACKEND_TREE; b <= SSSP_BACKEND_ARRAY; ++b) {
      sssp_options o;
      sssp_options_init(&o);
      o.algorithm = static_cast<sssp_algorithm>(a);
      o.backend = static_cast<sssp_backend>(b);
      o.delta = 2;
      o.rho = 2;
      auto r = run(g.get(), 0, o);
      ASSERT_TRUE(r);
      uint64_t len = 0;
      const uint64_t* d = sssp_result_distances(r.get(), &len);
      ASSERT_EQ(len, 6u);
      for (uint64_t i = 0; i < 6; ++i) EXPECT_EQ(d[i], 2 * i);
      EXPECT_EQ(sssp_result_checksum(r.get()), 30u);
    }
}

TEST(CApi, RunStatisticsAndRounds) {
  auto g = generate(1000, 5000, 3);
  sssp_options o;
  sssp_options_init(&o);
  o.algorithm = SSSP_ALGO_BELLMAN_FORD;
  auto r = run(g.get(), 0, o);
  const uint64_t rounds = sssp_result_num_rounds(r.get());
  ASSERT_GT(rounds, 0u);
  EXPECT_EQ(sssp_result_steps(r.get()), rounds);
  uint64_t visited = 0, edges = 0;
  for (uint64_t i = 0; i < rounds; ++i) {
    sssp_round_info info;
    ASSERT_EQ(sssp_result_round(r.get(), i, &info), SSSP_OK);
    visited += info.visited_v;
    edges += info.visited_e;
  }
  EXPECT_EQ(visited, sssp_result_total_extractions(r.get()));
  EXPECT_EQ(edges, sssp_result_visited_edges(r.get()));
  EXPECT_GE(sssp_result_relaxations_attempted(r.get()),
            sssp_result_relaxations_succeeded(r.get()));
  EXPECT_GE(sssp_result_wall_seconds(r.get()), 0.0);
  sssp_round_info info;
  EXPECT_EQ(sssp_result_round(r.get(), rounds, &info), SSSP_ERR_RANGE);
}

TEST(CApi, InvalidOptions) {
  auto g = generate(50, 100, 1);
  sssp_options o;
  sssp_options_init(&o);
  o.algorithm = SSSP_ALGO_DELTA_STAR;
  o.delta = 0;
  sssp_result* r = nullptr;
  EXPECT_EQ(sssp_run(g.get(), 0, &o, &r), SSSP_ERR_INVALID_ARGUMENT);
  sssp_options_init(&o);
  EXPECT_EQ(sssp_run(g.get(), 50, &o, &r), SSSP_ERR_INVALID_ARGUMENT);
  const uint64_t short_radii[] = {1, 2};
  o.algorithm = SSSP_ALGO_RADIUS;
  o.rho = 4;
  o.radii = short_radii;
  o.radii_len = 2;
  EXPECT_EQ(sssp_run(g.get(), 0, &o, &r), SSSP_ERR_CONFIG);
}

TEST(CApi, VerifyAgainstOracleAndCatchCorruption) {
  auto g = generate(500, 2000, 11, 1);
  sssp_options o;
  sssp_options_init(&o);
  o.algorithm = SSSP_ALGO_RHO;
  o.rho = 32;
  o.threads = 2;
  auto r = run(g.get(), 4, o);
  auto orc = oracle(g.get(), 4);
  int match = 0;
  sssp_mismatch mm{};
  ASSERT_EQ(sssp_verify(r.get(), orc.get(), &match, &mm), SSSP_OK);
  EXPECT_EQ(match, 1);
  ASSERT_EQ(sssp_result_debug_corrupt(r.get(), 7, 12345), SSSP_OK);
  ASSERT_EQ(sssp_verify(r.get(), orc.get(), &match, &mm), SSSP_OK);
  EXPECT_EQ(match, 0);
  EXPECT_EQ(mm.vertex, 7u);
  EXPECT_EQ(mm.got, 12345u);
  uint64_t len = 0;
  EXPECT_EQ(mm.want, sssp_oracle_distances(orc.get(), &len)[7]);
  EXPECT_EQ(sssp_result_debug_corrupt(r.get(), 500, 1), SSSP_ERR_RANGE);
}

TEST(CApi, OracleHopsAndDepth) {
  sssp_graph* raw = nullptr;
  ASSERT_EQ(sssp_graph_chain(4, 1, 1, &raw), SSSP_OK);
  GraphPtr g(raw);
  auto o = oracle(g.get(), 0);
  uint64_t len = 0;
  const uint32_t* hops = sssp_oracle_hops(o.get(), &len);
  ASSERT_EQ(len, 4u);
  EXPECT_EQ(hops[3], 3u);
  EXPECT_EQ(sssp_oracle_k_n(o.get()), 3u);
}

TEST(CApi, SaveLoadRoundTrip) {
  auto g = generate(64, 200, 2);
  const auto bin = temp_path("g.bin"), txt = temp_path("g.txt");
  ASSERT_EQ(sssp_graph_save_binary(g.get(), bin.c_str()), SSSP_OK);
  ASSERT_EQ(sssp_graph_save_text(g.get(), txt.c_str()), SSSP_OK);
  sssp_graph* a = nullptr;
  sssp_graph* b = nullptr;
  ASSERT_EQ(sssp_graph_load(bin.c_str(), 1, &a), SSSP_OK);
  ASSERT_EQ(sssp_graph_load(txt.c_str(), 0, &b), SSSP_OK);
  GraphPtr pa(a), pb(b);
  EXPECT_EQ(sssp_graph_fingerprint(a), sssp_graph_fingerprint(g.get()));
  EXPECT_EQ(sssp_graph_fingerprint(b), sssp_graph_fingerprint(g.get()));
  std::filesystem::remove(bin);
  std::filesystem::remove(txt);
  sssp_graph* c = nullptr;
  EXPECT_EQ(sssp_graph_load("/nonexistent/graph.bin", 0, &c), SSSP_ERR_IO);
}

TEST(CApi, MalformedTextIsParseError) {
  const auto p = temp_path("bad.txt");
  {
    FILE* f = std::fopen(p.c_str(), "w");
    std::fputs("0 1 5\n1 x 2\n", f);
    std::fclose(f);
  }
  sssp_graph* g = nullptr;
  EXPECT_EQ(sssp_graph_load(p.c_str(), 0, &g), SSSP_ERR_PARSE);
  EXPECT_NE(std::string(sssp_last_error_message()).find("2"), std::string::npos);
  std::filesystem::remove(p);
}

TEST(CApi, RadiiAndKRho) {
  sssp_graph* raw = nullptr;
  ASSERT_EQ(sssp_graph_chain(5, 1, 0, &raw), SSSP_OK);
  GraphPtr g(raw);
  std::vector<uint64_t> radii(5);
  ASSERT_EQ(sssp_compute_radii(g.get(), 3, 1, radii.data()), SSSP_OK);
  EXPECT_EQ(radii, (std::vector<uint64_t>{2, 1, 1, 1, 2}));
  uint32_t k = 0;
  std::vector<uint32_t> per(5);
  ASSERT_EQ(sssp_estimate_k_rho(g.get(), 3, 0, 1, 1, 1, &k, per.data()), SSSP_OK);
  EXPECT_EQ(k, 2u);
  EXPECT_EQ(per, (std::vector<uint32_t>{2, 1, 1, 1, 2}));
  uint32_t ks = 0;
  ASSERT_EQ(sssp_estimate_k_rho(g.get(), 3, 10, 1, 0, 1, &ks, nullptr), SSSP_OK);
  EXPECT_LE(ks, k);
}

TEST(CApi, RadiusRunComputesRadiiWhenNull) {
  auto g = generate(300, 1200, 6);
  sssp_options o;
  sssp_options_init(&o);
  o.algorithm = SSSP_ALGO_RADIUS;
  o.rho = 16;
  auto r = run(g.get(), 0, o);
  auto orc = oracle(g.get(), 0);
  int match = 0;
  ASSERT_EQ(sssp_verify(r.get(), orc.get(), &match, nullptr), SSSP_OK);
  EXPECT_EQ(match, 1);
}

TEST(CApi, BoundsReportJson) {
  auto g = generate(400, 2000, 9);
  sssp_options o;
  sssp_options_init(&o);
  o.algorithm = SSSP_ALGO_RHO;
  o.rho = 20;
  o.exact_rho = 1;
  auto r = run(g.get(), 0, o);
  auto orc = oracle(g.get(), 0);
  char* json = nullptr;
  ASSERT_EQ(sssp_bounds_report(g.get(), r.get(), orc.get(), SSSP_KRHO_EXACT, 0, 1, &json),
            SSSP_OK);
  const std::string s(json);
  sssp_string_free(json);
  EXPECT_NE(s.find("\"pass\": true"), std::string::npos) << s;
  EXPECT_NE(s.find("\"checks\""), std::string::npos);
  EXPECT_NE(s.find("\"k_rho\""), std::string::npos);
}

TEST(CApi, BoundsReportRejectsForeignOracle) {
  auto g = generate(100, 300, 1);
  auto h = generate(100, 300, 2);
  sssp_options o;
  sssp_options_init(&o);
  auto r = run(g.get(), 0, o);
  auto orc = oracle(h.get(), 0);
  char* json = nullptr;
  EXPECT_EQ(sssp_bounds_report(h.get(), r.get(), orc.get(), SSSP_KRHO_NONE, 0, 1, &json),
            SSSP_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(json, nullptr);
}

TEST(CApi, BidirectionalFlagOnDirectedGraph) {
  auto g = generate(100, 400, 3, 1);
  sssp_options o;
  sssp_options_init(&o);
  o.algorithm = SSSP_ALGO_DELTA_STAR;
  o.delta = 1000;
  o.bidirectional = 1;
  auto r = run(g.get(), 0, o);
  EXPECT_EQ(sssp_result_bidirectional_ignored(r.get()), 1);
}

TEST(CApi, FreeFunctionsAcceptNull) {
  sssp_graph_free(nullptr);
  sssp_result_free(nullptr);
  sssp_oracle_free(nullptr);
  sssp_string_free(nullptr);
}

}  // namespace
