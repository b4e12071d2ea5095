#include "sssp/sssp.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "sssp/analysis.hpp"
#include "sssp/error.hpp"
#include "sssp/graph.hpp"
#include "sssp/parallel.hpp"
#include "sssp/stepping.hpp"

struct sssp_graph {
  sssp::Graph graph;
};

struct sssp_result {
  sssp::RunResult run;
  sssp::SteppingPolicy policy;
  sssp::RunConfig config;
};

struct sssp_oracle {
  sssp::OracleResult oracle;
};

namespace {

thread_local std::string g_last_error;

sssp_status to_status(sssp::ErrorKind kind) {
  using sssp::ErrorKind;
  switch (kind) {
    case ErrorKind::kInvalidArgument: return SSSP_ERR_INVALID_ARGUMENT;
    case ErrorKind::kParse: return SSSP_ERR_PARSE;
    case ErrorKind::kRange: return SSSP_ERR_RANGE;
    case ErrorKind::kIo: return SSSP_ERR_IO;
    case ErrorKind::kFormat: return SSSP_ERR_FORMAT;
    case ErrorKind::kInfeasible: return SSSP_ERR_INFEASIBLE;
    case ErrorKind::kConfig: return SSSP_ERR_CONFIG;
    case ErrorKind::kCapacity: return SSSP_ERR_CAPACITY;
  }
  return SSSP_ERR_INTERNAL;
}

template <typename Fn>
sssp_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SSSP_OK;
  } catch (const sssp::Error& e) {
    g_last_error = e.what();
    return to_status(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SSSP_ERR_OUT_OF_MEMORY;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SSSP_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) sssp::fail(sssp::ErrorKind::kInvalidArgument, what);
}

sssp::SteppingPolicy to_policy(const sssp_graph* g, const sssp_options& o) {
  using sssp::SteppingPolicy;
  switch (o.algorithm) {
    case SSSP_ALGO_DIJKSTRA: return SteppingPolicy::dijkstra();
    case SSSP_ALGO_BELLMAN_FORD: return SteppingPolicy::bellman_ford();
    case SSSP_ALGO_DELTA: return SteppingPolicy::delta_stepping(o.delta);
    case SSSP_ALGO_DELTA_STAR: return SteppingPolicy::delta_star(o.delta);
    case SSSP_ALGO_RHO:
      return SteppingPolicy::rho_stepping(
          o.rho, o.exact_rho ? sssp::RhoSelector::kExact : sssp::RhoSelector::kSampled);
    case SSSP_ALGO_RADIUS: {
      std::vector<sssp::Distance> radii;
      if (o.radii) {
        radii.assign(o.radii, o.radii + o.radii_len);
      } else {
        require(o.rho >= 1, "rho must be >= 1");
        sssp::par::ThreadScope scope(o.threads);
        radii = sssp::compute_r_rho_table(g->graph, std::min<std::uint64_t>(
                                                        o.rho, g->graph.num_vertices()));
      }
      return SteppingPolicy::radius_stepping(o.rho, std::move(radii));
    }
  }
  sssp::fail(sssp::ErrorKind::kInvalidArgument, "unknown algorithm");
}

sssp::RunConfig to_config(const sssp_options& o) {
  sssp::RunConfig c;
  require(o.backend == SSSP_BACKEND_TREE || o.backend == SSSP_BACKEND_ARRAY, "unknown backend");
  c.backend = o.backend == SSSP_BACKEND_TREE ? sssp::Backend::kTree : sssp::Backend::kArray;
  require(o.sparse_dense_threshold >= 0, "sparse_dense_threshold must be >= 0");
  require(o.super_sparse_degree >= 0, "super_sparse_degree must be >= 0");
  require(o.threads >= 0, "threads must be >= 0");
  require(o.rho_sample_constant >= 1, "rho_sample_constant must be >= 1");
  c.sparse_dense_threshold = o.sparse_dense_threshold;
  c.super_sparse_degree = o.super_sparse_degree;
  c.fusion = o.fusion != 0;
  c.fusion_budget = o.fusion_budget;
  c.bidirectional = o.bidirectional != 0;
  c.rho_sample_constant = o.rho_sample_constant;
  c.rho_warmup = o.rho_warmup != 0;
  c.threads = o.threads;
  c.seed = o.seed;
  return c;
}

sssp_mode to_mode(sssp::FrontierMode m) {
  switch (m) {
    case sssp::FrontierMode::kDense: return SSSP_MODE_DENSE;
    case sssp::FrontierMode::kSparse: return SSSP_MODE_SPARSE;
    case sssp::FrontierMode::kSuperSparse: return SSSP_MODE_SUPER_SPARSE;
  }
  return SSSP_MODE_SPARSE;
}

}  // namespace

extern "C" {

const char* sssp_status_string(sssp_status status) {
  switch (status) {
    case SSSP_OK: return "ok";
    case SSSP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SSSP_ERR_PARSE: return "parse error";
    case SSSP_ERR_RANGE: return "range error";
    case SSSP_ERR_IO: return "i/o error";
    case SSSP_ERR_FORMAT: return "format error";
    case SSSP_ERR_INFEASIBLE: return "infeasible";
    case SSSP_ERR_CONFIG: return "configuration error";
    case SSSP_ERR_CAPACITY: return "capacity exhausted";
    case SSSP_ERR_OUT_OF_MEMORY: return "out of memory";
    case SSSP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* sssp_last_error_message(void) { return g_last_error.c_str(); }

sssp_status sssp_graph_generate(uint64_t n, uint64_t m, uint64_t seed, uint32_t wmin,
                                uint32_t wmax_exclusive, int directed, sssp_graph** out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    auto e = sssp::generate_random_graph(n, m, seed);
    e = sssp::assign_uniform_weights(std::move(e), seed ^ 0x5eedULL, wmin, wmax_exclusive);
    *out = new sssp_graph{sssp::build_csr(e, directed != 0)};
  });
}

sssp_status sssp_graph_from_edges(uint64_t n, const uint32_t* src, const uint32_t* dst,
                                  const uint32_t* weight, uint64_t m, int directed,
                                  sssp_graph** out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    require(m == 0 || (src && dst && weight), "edge arrays are NULL");
    sssp::EdgeList e;
    e.n = n;
    e.edges.reserve(m);
    for (uint64_t i = 0; i < m; ++i) e.edges.push_back({src[i], dst[i], weight[i]});
    *out = new sssp_graph{sssp::build_csr(e, directed != 0)};
  });
}

sssp_status sssp_graph_chain(uint64_t n, uint32_t weight, int directed, sssp_graph** out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    *out = new sssp_graph{sssp::make_chain(n, weight, directed != 0)};
  });
}

sssp_status sssp_graph_star(uint64_t leaves, uint32_t weight, sssp_graph** out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    *out = new sssp_graph{sssp::make_star(leaves, weight)};
  });
}

sssp_status sssp_graph_grid(uint64_t rows, uint64_t cols, uint64_t seed, sssp_graph** out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    *out = new sssp_graph{sssp::make_grid(rows, cols, seed, 1, sssp::kDefaultMaxWeightExclusive)};
  });
}

sssp_status sssp_graph_load(const char* path, int directed_if_text, sssp_graph** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "NULL argument");
    *out = new sssp_graph{sssp::load_graph(path, directed_if_text != 0)};
  });
}

sssp_status sssp_graph_save_binary(const sssp_graph* g, const char* path) {
  return guarded([&] {
    require(g != nullptr && path != nullptr, "NULL argument");
    sssp::save_binary(g->graph, path);
  });
}

sssp_status sssp_graph_save_text(const sssp_graph* g, const char* path) {
  return guarded([&] {
    require(g != nullptr && path != nullptr, "NULL argument");
    std::ofstream f(path, std::ios::binary);
    if (!f) sssp::fail(sssp::ErrorKind::kIo, std::string("cannot open ") + path);
    sssp::write_edge_list(sssp::to_edge_list(g->graph), f);
    if (!f) sssp::fail(sssp::ErrorKind::kIo, std::string("write failed: ") + path);
  });
}

void sssp_graph_free(sssp_graph* g) { delete g; }

uint64_t sssp_graph_num_vertices(const sssp_graph* g) { return g ? g->graph.num_vertices() : 0; }
uint64_t sssp_graph_num_arcs(const sssp_graph* g) { return g ? g->graph.num_arcs() : 0; }
int sssp_graph_directed(const sssp_graph* g) { return g && g->graph.directed() ? 1 : 0; }
uint32_t sssp_graph_max_weight(const sssp_graph* g) { return g ? g->graph.max_weight() : 0; }
uint64_t sssp_graph_fingerprint(const sssp_graph* g) { return g ? g->graph.fingerprint() : 0; }

void sssp_options_init(sssp_options* opts) {
  if (!opts) return;
  const sssp::RunConfig d;
  std::memset(opts, 0, sizeof(*opts));
  opts->algorithm = SSSP_ALGO_DIJKSTRA;
  opts->backend = SSSP_BACKEND_TREE;
  opts->sparse_dense_threshold = d.sparse_dense_threshold;
  opts->super_sparse_degree = d.super_sparse_degree;
  opts->fusion = d.fusion ? 1 : 0;
  opts->fusion_budget = d.fusion_budget;
  opts->bidirectional = d.bidirectional ? 1 : 0;
  opts->rho_sample_constant = d.rho_sample_constant;
  opts->rho_warmup = d.rho_warmup ? 1 : 0;
  opts->threads = 0;
  opts->seed = d.seed;
}

sssp_status sssp_run(const sssp_graph* g, uint32_t source, const sssp_options* opts,
                     sssp_result** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "NULL argument");
    sssp_options defaults;
    sssp_options_init(&defaults);
    const sssp_options& o = opts ? *opts : defaults;
    auto cfg = to_config(o);
    auto policy = to_policy(g, o);
    auto run = sssp::run_sssp(g->graph, source, policy, cfg);
    *out = new sssp_result{std::move(run), std::move(policy), cfg};
  });
}

void sssp_result_free(sssp_result* r) { delete r; }

const uint64_t* sssp_result_distances(const sssp_result* r, uint64_t* len) {
  if (!r) {
    if (len) *len = 0;
    return nullptr;
  }
  if (len) *len = r->run.dist.size();
  return r->run.dist.data();
}

uint64_t sssp_result_checksum(const sssp_result* r) {
  return r ? sssp::distance_checksum(r->run.dist) : 0;
}
uint64_t sssp_result_steps(const sssp_result* r) { return r ? r->run.stats.steps : 0; }
uint64_t sssp_result_substeps(const sssp_result* r) { return r ? r->run.stats.substeps : 0; }
uint64_t sssp_result_num_rounds(const sssp_result* r) {
  return r ? r->run.stats.rounds.size() : 0;
}

sssp_status sssp_result_round(const sssp_result* r, uint64_t index, sssp_round_info* out) {
  return guarded([&] {
    require(r != nullptr && out != nullptr, "NULL argument");
    if (index >= r->run.stats.rounds.size())
      sssp::fail(sssp::ErrorKind::kRange, "round index out of range");
    const auto& info = r->run.stats.rounds[index];
    *out = {to_mode(info.mode), info.theta, info.visited_v, info.visited_e,
            info.substep ? 1 : 0};
  });
}

uint64_t sssp_result_relaxations_attempted(const sssp_result* r) {
  return r ? r->run.stats.relaxations_attempted : 0;
}
uint64_t sssp_result_relaxations_succeeded(const sssp_result* r) {
  return r ? r->run.stats.relaxations_succeeded : 0;
}
uint64_t sssp_result_total_extractions(const sssp_result* r) {
  return r ? r->run.stats.total_extractions() : 0;
}
uint32_t sssp_result_max_extractions(const sssp_result* r) {
  return r ? r->run.stats.max_extractions() : 0;
}
uint64_t sssp_result_visited_edges(const sssp_result* r) {
  uint64_t e = 0;
  if (r)
    for (const auto& info : r->run.stats.rounds) e += info.visited_e;
  return e;
}
double sssp_result_wall_seconds(const sssp_result* r) {
  return r ? r->run.stats.wall_seconds : 0.0;
}
int sssp_result_bidirectional_ignored(const sssp_result* r) {
  return r && r->run.stats.bidirectional_ignored ? 1 : 0;
}

sssp_status sssp_result_debug_corrupt(sssp_result* r, uint32_t vertex, uint64_t value) {
  return guarded([&] {
    require(r != nullptr, "result is NULL");
    if (vertex >= r->run.dist.size()) sssp::fail(sssp::ErrorKind::kRange, "vertex out of range");
    r->run.dist[vertex] = value;
  });
}

sssp_status sssp_oracle_run(const sssp_graph* g, uint32_t source, sssp_oracle** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "NULL argument");
    *out = new sssp_oracle{sssp::dijkstra_oracle(g->graph, source)};
  });
}

void sssp_oracle_free(sssp_oracle* o) { delete o; }

const uint64_t* sssp_oracle_distances(const sssp_oracle* o, uint64_t* len) {
  if (len) *len = o ? o->oracle.dist.size() : 0;
  return o ? o->oracle.dist.data() : nullptr;
}

const uint32_t* sssp_oracle_hops(const sssp_oracle* o, uint64_t* len) {
  if (len) *len = o ? o->oracle.hops.size() : 0;
  return o ? o->oracle.hops.data() : nullptr;
}

uint32_t sssp_oracle_k_n(const sssp_oracle* o) { return o ? o->oracle.k_n : 0; }

sssp_status sssp_verify(const sssp_result* r, const sssp_oracle* o, int* match,
                        sssp_mismatch* first) {
  return guarded([&] {
    require(r != nullptr && o != nullptr && match != nullptr, "NULL argument");
    const auto& got = r->run.dist;
    const auto& want = o->oracle.dist;
    if (got.size() != want.size())
      sssp::fail(sssp::ErrorKind::kInvalidArgument, "result and oracle sizes differ");
    *match = 1;
    for (std::size_t v = 0; v < got.size(); ++v) {
      if (got[v] != want[v]) {
        *match = 0;
        if (first) *first = {static_cast<uint32_t>(v), got[v], want[v]};
        return;
      }
    }
  });
}

sssp_status sssp_compute_radii(const sssp_graph* g, uint64_t rho, int threads, uint64_t* out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "NULL argument");
    sssp::par::ThreadScope scope(threads);
    const auto table = sssp::compute_r_rho_table(g->graph, rho);
    std::copy(table.begin(), table.end(), out);
  });
}

sssp_status sssp_estimate_k_rho(const sssp_graph* g, uint64_t rho, uint64_t samples,
                                uint64_t seed, int exact, int threads, uint32_t* k_hat,
                                uint32_t* per_sample) {
  return guarded([&] {
    require(g != nullptr && k_hat != nullptr, "NULL argument");
    sssp::par::ThreadScope scope(threads);
    const auto e = exact ? sssp::exact_k_rho(g->graph, rho)
                         : sssp::estimate_k_rho(g->graph, rho, samples, seed);
    *k_hat = e.k_rho_hat;
    if (per_sample) std::copy(e.per_sample_k.begin(), e.per_sample_k.end(), per_sample);
  });
}

sssp_status sssp_bounds_report(const sssp_graph* g, const sssp_result* r, const sssp_oracle* o,
                               sssp_krho_mode krho_mode, uint64_t krho_samples, uint64_t seed,
                               char** json_out) {
  return guarded([&] {
    require(g != nullptr && r != nullptr && o != nullptr && json_out != nullptr,
            "NULL argument");
    std::optional<sssp::KRhoEstimate> krho;
    const auto& p = r->policy;
    if (p.kind == sssp::Algorithm::kRho && krho_mode != SSSP_KRHO_NONE) {
      sssp::par::ThreadScope scope(r->config.threads);
      const std::size_t rho = std::min<std::uint64_t>(p.rho, g->graph.num_vertices());
      krho = krho_mode == SSSP_KRHO_EXACT ? sssp::exact_k_rho(g->graph, rho)
                                          : sssp::estimate_k_rho(g->graph, rho, krho_samples, seed);
    }
    const auto report = sssp::bound_report(g->graph, p, r->config, r->run.stats, o->oracle, krho);
    const std::string text = report.to_json();
    char* buf = new char[text.size() + 1];
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *json_out = buf;
  });
}

void sssp_string_free(char* s) { delete[] s; }

}  // extern "C"
