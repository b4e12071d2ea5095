// Command-line front end. Talks to the library only through the C API.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sssp/sssp.h"

namespace {

enum Exit { kOk = 0, kVerifyFail = 1, kUsage = 2, kIo = 3 };
// Bumped whenever a krho JSON field is renamed or removed.
constexpr int kKRhoSchemaVersion = 1;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void usage_error(const std::string& msg) { throw CliError{kUsage, msg}; }

// Maps a failed library call to an exit code.
void check(sssp_status s, const std::string& context) {
  if (s == SSSP_OK) return;
  int code = kUsage;
  switch (s) {
    case SSSP_ERR_IO:
    case SSSP_ERR_PARSE:
    case SSSP_ERR_FORMAT:
    case SSSP_ERR_RANGE:
      code = kIo;
      break;
    default:
      break;
  }
  const std::string detail = sssp_last_error_message();
  throw CliError{code, context + ": " + (detail.empty() ? sssp_status_string(s) : detail)};
}

struct GraphDeleter {
  void operator()(sssp_graph* g) const { sssp_graph_free(g); }
};
struct ResultDeleter {
  void operator()(sssp_result* r) const { sssp_result_free(r); }
};
struct OracleDeleter {
  void operator()(sssp_oracle* o) const { sssp_oracle_free(o); }
};
using GraphPtr = std::unique_ptr<sssp_graph, GraphDeleter>;
using ResultPtr = std::unique_ptr<sssp_result, ResultDeleter>;
using OraclePtr = std::unique_ptr<sssp_oracle, OracleDeleter>;

int default_threads() {
  if (const char* env = std::getenv("SSSP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0 && v <= 4096) return static_cast<int>(v);
  }
  return 0;
}

// Options shared by run, verify, stats and bounds.
struct RunArgs {
  std::string graph_path;
  bool directed = false;
  std::string algo = "dijkstra";
  std::optional<std::uint64_t> delta;
  std::optional<std::uint64_t> rho;
  bool exact_rho = false;
  std::string backend = "tree";
  double threshold = 1.0 / 20.0;
  double super_sparse_degree = 20.0;
  bool no_fusion = false;
  std::uint64_t fusion_budget = 4096;
  bool bidirectional = false;
  std::uint64_t rho_c = 10;
  bool no_warmup = false;
  int threads = default_threads();
  std::uint64_t seed = 1;
};

void add_run_options(CLI::App* cmd, RunArgs& s) {
  cmd->add_option("--graph", s.graph_path, "graph file (binary or text edge list)")->required();
  cmd->add_flag("--directed", s.directed, "treat a text edge list as directed");
  cmd->add_option("--algo", s.algo, "dijkstra | bellman-ford | delta | delta-star | rho | radius")
      ->check(CLI::IsMember({"dijkstra", "bellman-ford", "bf", "delta", "delta-star", "rho",
                             "radius"}));
  cmd->add_option("--delta", s.delta, "bucket width (delta, delta-star)");
  cmd->add_option("--rho", s.rho, "vertices per step (rho: default 2^21 clamped to n)");
  cmd->add_flag("--exact-rho", s.exact_rho, "select the exact rho-th key instead of sampling");
  cmd->add_option("--backend", s.backend, "tree | array")->check(CLI::IsMember({"tree", "array"}));
  cmd->add_option("--threshold", s.threshold, "dense when frontier+edges > threshold*m")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--super-sparse-degree", s.super_sparse_degree)->check(CLI::NonNegativeNumber);
  cmd->add_flag("--no-fusion", s.no_fusion, "disable local search in super-sparse rounds");
  cmd->add_option("--fusion-budget", s.fusion_budget)->check(CLI::PositiveNumber);
  cmd->add_flag("--bidirectional", s.bidirectional, "pull before push (undirected graphs)");
  cmd->add_option("--rho-samples-c", s.rho_c, "sampling constant c")->check(CLI::PositiveNumber);
  cmd->add_flag("--no-warmup", s.no_warmup, "keep full rho in the first dense rounds");
  cmd->add_option("--threads", s.threads, "worker threads (0: all; env SSSP_THREADS)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", s.seed, "seed for threshold sampling");
}

sssp_algorithm algorithm_of(const std::string& name) {
  if (name == "dijkstra") return SSSP_ALGO_DIJKSTRA;
  if (name == "bellman-ford" || name == "bf") return SSSP_ALGO_BELLMAN_FORD;
  if (name == "delta") return SSSP_ALGO_DELTA;
  if (name == "delta-star") return SSSP_ALGO_DELTA_STAR;
  if (name == "rho") return SSSP_ALGO_RHO;
  return SSSP_ALGO_RADIUS;
}

GraphPtr load(const RunArgs& s) {
  sssp_graph* g = nullptr;
  check(sssp_graph_load(s.graph_path.c_str(), s.directed ? 1 : 0, &g), "loading " + s.graph_path);
  return GraphPtr(g);
}

sssp_options options_of(const RunArgs& s, const sssp_graph* g) {
  sssp_options o;
  sssp_options_init(&o);
  o.algorithm = algorithm_of(s.algo);
  o.backend = s.backend == "array" ? SSSP_BACKEND_ARRAY : SSSP_BACKEND_TREE;
  const std::uint64_t n = sssp_graph_num_vertices(g);
  if (o.algorithm == SSSP_ALGO_DELTA || o.algorithm == SSSP_ALGO_DELTA_STAR) {
    if (!s.delta) usage_error("--algo " + s.algo + " requires --delta");
    if (*s.delta == 0) usage_error("--delta must be >= 1");
    o.delta = *s.delta;
  }
  if (o.algorithm == SSSP_ALGO_RHO) {
    const std::uint64_t rho = s.rho.value_or(std::uint64_t{1} << 21);
    if (rho == 0) usage_error("--rho must be >= 1");
    o.rho = std::max<std::uint64_t>(1, std::min(rho, n));
  }
  if (o.algorithm == SSSP_ALGO_RADIUS) {
    if (!s.rho) usage_error("--algo radius requires --rho");
    if (*s.rho == 0) usage_error("--rho must be >= 1");
    o.rho = std::max<std::uint64_t>(1, std::min(*s.rho, n));
  }
  o.exact_rho = s.exact_rho ? 1 : 0;
  o.sparse_dense_threshold = s.threshold;
  o.super_sparse_degree = s.super_sparse_degree;
  o.fusion = s.no_fusion ? 0 : 1;
  o.fusion_budget = s.fusion_budget;
  o.bidirectional = s.bidirectional ? 1 : 0;
  o.rho_sample_constant = s.rho_c;
  o.rho_warmup = s.no_warmup ? 0 : 1;
  o.threads = s.threads;
  o.seed = s.seed;
  return o;
}

// "1,5,7" or "random:<k>:<seed>".
std::vector<std::uint32_t> parse_sources(const std::string& text, std::uint64_t n) {
  std::vector<std::uint32_t> out;
  auto parse_u64 = [&](const std::string& tok) -> std::uint64_t {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      usage_error("bad number '" + tok + "' in --sources");
    try {
      return std::stoull(tok);
    } catch (const std::exception&) {
      usage_error("number '" + tok + "' out of range in --sources");
    }
  };
  if (text.rfind("random:", 0) == 0) {
    const auto rest = text.substr(7);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) usage_error("expected random:<k>:<seed>");
    const std::uint64_t k = parse_u64(rest.substr(0, colon));
    const std::uint64_t seed = parse_u64(rest.substr(colon + 1));
    if (k == 0) usage_error("random source count must be >= 1");
    if (n == 0) usage_error("graph has no vertices");
    std::mt19937_64 rng(seed);
    for (std::uint64_t i = 0; i < k; ++i) {
      // Rejection keeps the draw unbiased and platform independent.
      const std::uint64_t limit = (0 - n) % n;
      std::uint64_t r;
      do r = rng();
      while (r < limit);
      out.push_back(static_cast<std::uint32_t>(r % n));
    }
    return out;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const std::uint64_t v = parse_u64(tok);
    if (v >= n) usage_error("source " + tok + " out of range (n = " + std::to_string(n) + ")");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  if (out.empty()) usage_error("no sources given");
  return out;
}

ResultPtr run_one(const sssp_graph* g, std::uint32_t source, const sssp_options& o) {
  sssp_result* r = nullptr;
  check(sssp_run(g, source, &o, &r), "run from source " + std::to_string(source));
  return ResultPtr(r);
}

OraclePtr oracle_of(const sssp_graph* g, std::uint32_t source) {
  sssp_oracle* o = nullptr;
  check(sssp_oracle_run(g, source, &o), "oracle");
  return OraclePtr(o);
}

std::string distance_text(std::uint64_t d) {
  return d == SSSP_INF_DISTANCE ? "inf" : std::to_string(d);
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw CliError{kIo, "cannot open " + path + " for writing"};
  f << text << "\n";
  if (!f) throw CliError{kIo, "write failed: " + path};
}

const char* mode_name(sssp_mode m) {
  switch (m) {
    case SSSP_MODE_DENSE: return "dense";
    case SSSP_MODE_SPARSE: return "sparse";
    case SSSP_MODE_SUPER_SPARSE: return "super-sparse";
  }
  return "unknown";
}

// --- subcommands ----------------------------------------------------------

struct GenArgs {
  std::uint64_t n = 0, m = 0, seed = 1;
  std::uint32_t wmin = 1, wmax = 262144;
  bool directed = false;
  std::string format = "binary";
  std::string out = "graph.bin";
};

int cmd_gen(const GenArgs& a) {
  sssp_graph* raw = nullptr;
  check(sssp_graph_generate(a.n, a.m, a.seed, a.wmin, a.wmax, a.directed ? 1 : 0, &raw),
        "gen");
  GraphPtr g(raw);
  if (a.format == "text")
    check(sssp_graph_save_text(g.get(), a.out.c_str()), "writing " + a.out);
  else
    check(sssp_graph_save_binary(g.get(), a.out.c_str()), "writing " + a.out);
  std::cout << "n=" << sssp_graph_num_vertices(g.get()) << " m=" << a.m
            << " arcs=" << sssp_graph_num_arcs(g.get())
            << " directed=" << (a.directed ? 1 : 0) << " L=" << sssp_graph_max_weight(g.get())
            << " out=" << a.out << "\n";
  return kOk;
}

int cmd_run(const RunArgs& s, const std::string& sources, int repeats) {
  auto g = load(s);
  const auto o = options_of(s, g.get());
  const auto srcs = parse_sources(sources, sssp_graph_num_vertices(g.get()));
  std::cout << "source,repeat,algo,backend,threads,time_s,steps,substeps,rounds,"
               "relax_attempted,relax_succeeded,visited_v,visited_e,checksum\n";
  for (auto src : srcs) {
    for (int rep = 0; rep < repeats; ++rep) {
      auto r = run_one(g.get(), src, o);
      char time_buf[32];
      std::snprintf(time_buf, sizeof time_buf, "%.6f", sssp_result_wall_seconds(r.get()));
      std::cout << src << ',' << rep << ',' << s.algo << ',' << s.backend << ',' << s.threads
                << ',' << time_buf << ',' << sssp_result_steps(r.get()) << ','
                << sssp_result_substeps(r.get()) << ',' << sssp_result_num_rounds(r.get()) << ','
                << sssp_result_relaxations_attempted(r.get()) << ','
                << sssp_result_relaxations_succeeded(r.get()) << ','
                << sssp_result_total_extractions(r.get()) << ','
                << sssp_result_visited_edges(r.get()) << ',' << sssp_result_checksum(r.get())
                << '\n';
    }
  }
  return kOk;
}

int cmd_verify(const RunArgs& s, const std::string& sources,
               std::optional<std::uint32_t> corrupt_vertex) {
  auto g = load(s);
  const auto o = options_of(s, g.get());
  const auto srcs = parse_sources(sources, sssp_graph_num_vertices(g.get()));
  bool all_ok = true;
  for (auto src : srcs) {
    auto r = run_one(g.get(), src, o);
    if (corrupt_vertex) {
      std::uint64_t len = 0;
      const std::uint64_t old = sssp_result_distances(r.get(), &len)[*corrupt_vertex % len];
      check(sssp_result_debug_corrupt(r.get(), *corrupt_vertex, old == 0 ? 1 : old - 1),
            "corrupt hook");
    }
    auto oracle = oracle_of(g.get(), src);
    int match = 0;
    sssp_mismatch mm{};
    check(sssp_verify(r.get(), oracle.get(), &match, &mm), "verify");
    if (match) {
      std::cout << "PASS source=" << src << "\n";
    } else {
      all_ok = false;
      std::cout << "FAIL source=" << src << " vertex=" << mm.vertex
                << " got=" << distance_text(mm.got) << " want=" << distance_text(mm.want)
                << "\n";
    }
  }
  return all_ok ? kOk : kVerifyFail;
}

int cmd_stats(const RunArgs& s, std::uint32_t source) {
  auto g = load(s);
  const auto o = options_of(s, g.get());
  if (source >= sssp_graph_num_vertices(g.get())) usage_error("--source out of range");
  auto r = run_one(g.get(), source, o);
  std::cout << "step,mode,theta,visited_v,visited_e\n";
  const std::uint64_t rounds = sssp_result_num_rounds(r.get());
  for (std::uint64_t i = 0; i < rounds; ++i) {
    sssp_round_info info;
    check(sssp_result_round(r.get(), i, &info), "round");
    std::cout << i << ',' << mode_name(info.mode) << ',' << distance_text(info.theta) << ','
              << info.visited_v << ',' << info.visited_e << '\n';
  }
  return kOk;
}

struct KrhoArgs {
  std::string graph_path;
  bool directed = false;
  std::vector<std::uint64_t> rhos;
  std::uint64_t samples = 100;
  std::uint64_t seed = 1;
  bool exact = false;
  int threads = default_threads();
  std::string out;
};

int cmd_krho(const KrhoArgs& a) {
  RunArgs s;
  s.graph_path = a.graph_path;
  s.directed = a.directed;
  auto g = load(s);
  const std::uint64_t n = sssp_graph_num_vertices(g.get());
  if (n == 0) usage_error("graph has no vertices");
  std::vector<std::pair<std::string, std::uint64_t>> grid;
  if (a.rhos.empty()) {
    const double dn = static_cast<double>(n);
    const double lg = std::max(1.0, std::log2(dn));
    grid = {{"log n", static_cast<std::uint64_t>(std::ceil(lg))},
            {"sqrt n", static_cast<std::uint64_t>(std::ceil(std::sqrt(dn)))},
            {"n/log n", static_cast<std::uint64_t>(std::ceil(dn / lg))},
            {"n/10", static_cast<std::uint64_t>(std::ceil(dn / 10.0))},
            {"n", n}};
  } else {
    for (auto r : a.rhos) grid.emplace_back(std::to_string(r), r);
  }
  nlohmann::json list = nlohmann::json::array();
  for (auto& [label, rho_raw] : grid) {
    const std::uint64_t rho = std::clamp<std::uint64_t>(rho_raw, 1, n);
    std::uint32_t k = 0;
    check(sssp_estimate_k_rho(g.get(), rho, a.samples, a.seed, a.exact ? 1 : 0, a.threads, &k,
                              nullptr),
          "k_rho");
    list.push_back({{"label", label}, {"rho", rho}, {"k_rho_hat", k}, {"exact", a.exact}});
  }
  nlohmann::json doc = {
      {"graph", {{"path", a.graph_path}, {"n", n}, {"arcs", sssp_graph_num_arcs(g.get())},
                 {"directed", sssp_graph_directed(g.get()) != 0}, {"fingerprint", sssp_graph_fingerprint(g.get())}}},
      {"samples", a.exact ? n : a.samples},
      {"seed", a.seed},
      {"estimates", list},
      {"schema_version", kKRhoSchemaVersion}};
  write_output(doc.dump(2), a.out);
  return kOk;
}

int cmd_bounds(const RunArgs& s, std::uint32_t source, const std::string& krho_mode,
               std::uint64_t samples, const std::string& out) {
  auto g = load(s);
  const auto o = options_of(s, g.get());
  const std::uint64_t n = sssp_graph_num_vertices(g.get());
  if (source >= n) usage_error("--source out of range");
  auto r = run_one(g.get(), source, o);
  auto oracle = oracle_of(g.get(), source);
  sssp_krho_mode mode = SSSP_KRHO_NONE;
  if (krho_mode == "exact") mode = SSSP_KRHO_EXACT;
  else if (krho_mode == "sampled") mode = SSSP_KRHO_SAMPLED;
  else if (krho_mode == "auto") mode = n <= 5000 ? SSSP_KRHO_EXACT : SSSP_KRHO_SAMPLED;
  char* json = nullptr;
  check(sssp_bounds_report(g.get(), r.get(), oracle.get(), mode, samples, s.seed, &json),
        "bounds");
  const std::string text(json);
  sssp_string_free(json);
  write_output(text, out);
  return nlohmann::json::parse(text).at("pass").get<bool>() ? kOk : kVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel stepping single-source shortest paths"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "generate a random weighted graph");
  c_gen->add_option("--n", gen.n, "vertices")->required();
  c_gen->add_option("--m", gen.m, "edges")->required();
  c_gen->add_option("--seed", gen.seed);
  c_gen->add_option("--wmin", gen.wmin, "smallest weight")->check(CLI::PositiveNumber);
  c_gen->add_option("--wmax", gen.wmax, "weights drawn from [wmin, wmax)");
  c_gen->add_flag("--directed", gen.directed);
  c_gen->add_option("--format", gen.format)->check(CLI::IsMember({"binary", "text"}));
  c_gen->add_option("--out", gen.out);

  RunArgs run_args;
  std::string run_sources = "0";
  int repeats = 1;
  auto* c_run = app.add_subcommand("run", "run and print one CSV row per source and repeat");
  add_run_options(c_run, run_args);
  c_run->add_option("--sources", run_sources, "list 0,5,9 or random:<k>:<seed>");
  c_run->add_option("--repeats", repeats)->check(CLI::PositiveNumber);

  RunArgs verify_args;
  std::string verify_sources = "0";
  std::optional<std::uint32_t> corrupt;
  auto* c_verify = app.add_subcommand("verify", "compare against the sequential oracle");
  add_run_options(c_verify, verify_args);
  c_verify->add_option("--sources", verify_sources, "list 0,5,9 or random:<k>:<seed>");
  c_verify->add_option("--debug-corrupt", corrupt, "test hook: perturb one distance")
      ->group("");

  RunArgs stats_args;
  std::uint32_t stats_source = 0;
  auto* c_stats = app.add_subcommand("stats", "per-step CSV for one source");
  add_run_options(c_stats, stats_args);
  c_stats->add_option("--source", stats_source);

  KrhoArgs krho;
  auto* c_krho = app.add_subcommand("krho", "estimate k_rho over a grid of rho values");
  c_krho->add_option("--graph", krho.graph_path)->required();
  c_krho->add_flag("--directed", krho.directed);
  c_krho->add_option("--rho", krho.rhos, "rho values (default: log n, sqrt n, n/log n, n/10, n)");
  c_krho->add_option("--samples", krho.samples)->check(CLI::PositiveNumber);
  c_krho->add_option("--seed", krho.seed);
  c_krho->add_flag("--exact", krho.exact, "examine every vertex");
  c_krho->add_option("--threads", krho.threads)->check(CLI::NonNegativeNumber);
  c_krho->add_option("--out", krho.out, "write JSON here instead of stdout");

  RunArgs bounds_args;
  std::uint32_t bounds_source = 0;
  std::string bounds_krho = "auto";
  std::uint64_t bounds_samples = 100;
  std::string bounds_out;
  auto* c_bounds = app.add_subcommand("bounds", "check a run against the theoretical bounds");
  add_run_options(c_bounds, bounds_args);
  c_bounds->add_option("--source", bounds_source);
  c_bounds->add_option("--krho", bounds_krho, "auto | exact | sampled | none")
      ->check(CLI::IsMember({"auto", "exact", "sampled", "none"}));
  c_bounds->add_option("--samples", bounds_samples)->check(CLI::PositiveNumber);
  c_bounds->add_option("--out", bounds_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*c_gen) return cmd_gen(gen);
    if (*c_run) return cmd_run(run_args, run_sources, repeats);
    if (*c_verify) return cmd_verify(verify_args, verify_sources, corrupt);
    if (*c_stats) return cmd_stats(stats_args, stats_source);
    if (*c_krho) return cmd_krho(krho);
    if (*c_bounds)
      return cmd_bounds(bounds_args, bounds_source, bounds_krho, bounds_samples, bounds_out);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  }
  return kUsage;
}
