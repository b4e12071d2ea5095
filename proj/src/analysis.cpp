#include "sssp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <tuple>
#include <unordered_map>

#include "json.hpp"
#include "sssp/error.hpp"
#include "sssp/parallel.hpp"
#include "sssp/random.hpp"

namespace sssp {
namespace {

using Label = std::tuple<Distance, std::uint32_t, VertexId>;  // (dist, hops, id)

void check_vertex(const Graph& g, VertexId v) {
  if (v >= g.num_vertices())
    fail(ErrorKind::kInvalidArgument, "vertex " + std::to_string(v) + " out of range");
}

// Settles vertices from v in (dist, hops, id) order and hands each to
// visit(dist, hops); stops when visit returns false or after `limit`.
template <typename Visit>
void truncated_dijkstra(const Graph& g, VertexId v, std::size_t limit, Visit&& visit) {
  std::unordered_map<VertexId, std::pair<Distance, std::uint32_t>> best;
  std::priority_queue<Label, std::vector<Label>, std::greater<>> heap;
  std::unordered_map<VertexId, bool> settled;
  best[v] = {0, 0};
  heap.emplace(0, 0, v);
  std::size_t count = 0;
  while (!heap.empty() && count < limit) {
    const auto [d, h, x] = heap.top();
    heap.pop();
    if (settled.count(x)) continue;
    settled[x] = true;
    ++count;
    if (!visit(d, h)) return;
    const auto nbrs = g.neighbors(x);
    const auto ws = g.neighbor_weights(x);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const VertexId y = nbrs[i];
      if (settled.count(y)) continue;
      const std::pair<Distance, std::uint32_t> cand{d + ws[i], h + 1};
      auto it = best.find(y);
      if (it == best.end() || cand < it->second) {
        best[y] = cand;
        heap.emplace(cand.first, cand.second, y);
      }
    }
  }
}

}  // namespace

OracleResult dijkstra_oracle(const Graph& g, VertexId source) {
  check_vertex(g, source);
  const std::size_t n = g.num_vertices();
  OracleResult r;
  r.dist.assign(n, kInfDistance);
  r.hops.assign(n, 0);
  std::vector<bool> done(n, false);
  std::priority_queue<Label, std::vector<Label>, std::greater<>> heap;
  r.dist[source] = 0;
  heap.emplace(0, 0, source);
  while (!heap.empty()) {
    const auto [d, h, x] = heap.top();
    heap.pop();
    if (done[x]) continue;
    done[x] = true;
    r.k_n = std::max(r.k_n, h);
    const auto nbrs = g.neighbors(x);
    const auto ws = g.neighbor_weights(x);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const VertexId y = nbrs[i];
      if (done[y]) continue;
      const Distance nd = d + ws[i];
      if (nd < r.dist[y] || (nd == r.dist[y] && h + 1 < r.hops[y])) {
        r.dist[y] = nd;
        r.hops[y] = h + 1;
        heap.emplace(nd, h + 1, y);
      }
    }
  }
  return r;
}

std::vector<Distance> bellman_ford_oracle(const Graph& g, VertexId source) {
  check_vertex(g, source);
  const std::size_t n = g.num_vertices();
  std::vector<Distance> dist(n, kInfDistance);
  dist[source] = 0;
  for (std::size_t round = 0; round + 1 < std::max<std::size_t>(n, 2); ++round) {
    bool changed = false;
    for (VertexId u = 0; u < n; ++u) {
      if (dist[u] == kInfDistance) continue;
      const auto nbrs = g.neighbors(u);
      const auto ws = g.neighbor_weights(u);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        if (dist[u] + ws[i] < dist[nbrs[i]]) {
          dist[nbrs[i]] = dist[u] + ws[i];
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return dist;
}

std::uint32_t k_rho_at(const Graph& g, VertexId v, std::size_t rho) {
  check_vertex(g, v);
  std::uint32_t k = 0;
  truncated_dijkstra(g, v, rho, [&](Distance, std::uint32_t h) {
    k = std::max(k, h);
    return true;
  });
  return k;
}

Distance r_rho_at(const Graph& g, VertexId v, std::size_t rho) {
  check_vertex(g, v);
  if (rho == 0) fail(ErrorKind::kInvalidArgument, "rho must be >= 1");
  Distance last = kInfDistance;
  std::size_t seen = 0;
  truncated_dijkstra(g, v, rho, [&](Distance d, std::uint32_t) {
    last = d;
    ++seen;
    return true;
  });
  return seen == rho ? last : kInfDistance;
}

KRhoEstimate estimate_k_rho(const Graph& g, std::size_t rho, std::size_t samples,
                            std::uint64_t seed) {
  const std::uint64_t n = g.num_vertices();
  if (rho == 0 || rho > n) fail(ErrorKind::kInvalidArgument, "rho must be in [1, n]");
  if (samples == 0) fail(ErrorKind::kInvalidArgument, "samples must be >= 1");
  Rng rng(seed);
  std::vector<VertexId> picks(samples);
  for (auto& v : picks) v = static_cast<VertexId>(uniform_below(rng, n));
  KRhoEstimate e;
  e.rho = rho;
  e.samples = samples;
  e.per_sample_k.resize(samples);
  par::parallel_for(samples, [&](std::size_t i) { e.per_sample_k[i] = k_rho_at(g, picks[i], rho); }, 1);
  for (auto k : e.per_sample_k) e.k_rho_hat = std::max(e.k_rho_hat, k);
  return e;
}

KRhoEstimate exact_k_rho(const Graph& g, std::size_t rho) {
  const std::uint64_t n = g.num_vertices();
  if (rho == 0 || rho > n) fail(ErrorKind::kInvalidArgument, "rho must be in [1, n]");
  KRhoEstimate e;
  e.rho = rho;
  e.samples = n;
  e.exact = true;
  e.per_sample_k.resize(n);
  par::parallel_for(n, [&](std::size_t v) {
    e.per_sample_k[v] = k_rho_at(g, static_cast<VertexId>(v), rho);
  }, 1);
  for (auto k : e.per_sample_k) e.k_rho_hat = std::max(e.k_rho_hat, k);
  return e;
}

std::vector<Distance> compute_r_rho_table(const Graph& g, std::size_t rho) {
  if (rho == 0 || rho > g.num_vertices())
    fail(ErrorKind::kInvalidArgument, "rho must be in [1, n]");
  std::vector<Distance> table(g.num_vertices());
  par::parallel_for(table.size(), [&](std::size_t v) {
    table[v] = r_rho_at(g, static_cast<VertexId>(v), rho);
  }, 1);
  return table;
}

bool BoundReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.pass; });
}

std::string BoundReport::to_json(int indent) const {
  using nlohmann::json;
  json graph = {{"fingerprint", graph_fingerprint}, {"n", n},       {"arcs", arcs},
                {"directed", directed},             {"L", max_weight}};
  json params = {{"backend", backend}, {"k_n", k_n}};
  if (delta) params["delta"] = delta;
  if (rho) params["rho"] = rho;
  if (policy == "rho") params["selector"] = exact_selector ? "exact" : "sampled";
  if (krho) {
    params["k_rho"] = {{"rho", krho->rho},
                       {"value", krho->k_rho_hat},
                       {"samples", krho->samples},
                       {"exact", krho->exact}};
  }
  json observed = json::object(), bound = json::object(), list = json::array();
  for (const auto& c : checks) {
    observed[c.name] = c.observed;
    bound[c.name] = c.bound;
    list.push_back({{"name", c.name}, {"observed", c.observed}, {"bound", c.bound}, {"pass", c.pass}});
  }
  json out = {{"graph", graph},       {"policy", policy}, {"params", params},
              {"observed", observed}, {"bound", bound},   {"pass", pass()},
              {"checks", list},       {"schema_version", kReportSchemaVersion}};
  return out.dump(indent);
}

BoundReport bound_report(const Graph& g, const SteppingPolicy& policy, const RunConfig& cfg,
                         const RunStats& stats, const OracleResult& oracle,
                         const std::optional<KRhoEstimate>& krho) {
  if (stats.graph_fingerprint != g.fingerprint() || oracle.dist.size() != g.num_vertices())
    fail(ErrorKind::kInvalidArgument, "run statistics belong to a different graph");
  BoundReport r;
  r.graph_fingerprint = g.fingerprint();
  r.n = g.num_vertices();
  r.arcs = g.num_arcs();
  r.directed = g.directed();
  r.max_weight = g.max_weight();
  r.policy = std::string(to_string(policy.kind));
  r.backend = std::string(to_string(cfg.backend));
  r.delta = policy.delta;
  r.rho = policy.rho;
  r.exact_selector = policy.selector == RhoSelector::kExact;
  r.k_n = oracle.k_n;
  r.krho = krho;

  auto add = [&](std::string name, double observed, double bound) {
    r.checks.push_back({std::move(name), observed, bound, observed <= bound});
  };
  const double k_n = oracle.k_n;
  add("max_extractions", stats.max_extractions(), std::max(k_n, 1.0));
  const double steps = static_cast<double>(stats.steps);
  switch (policy.kind) {
    case Algorithm::kBellmanFord:
      add("steps", steps, k_n + 1);
      break;
    case Algorithm::kDeltaStar: {
      const double L = g.max_weight();
      add("steps", steps, std::ceil(k_n * L / static_cast<double>(policy.delta)) + k_n);
      break;
    }
    case Algorithm::kRho:
      if (krho && !g.directed() && policy.selector == RhoSelector::kExact) {
        const double blocks = std::ceil(static_cast<double>(r.n) / static_cast<double>(policy.rho));
        add("steps", steps, (2.0 * krho->k_rho_hat + 3.0) * blocks);
      }
      break;
    default:
      break;
  }
  if (cfg.backend == Backend::kTree) {
    const double u = static_cast<double>(stats.relaxations_succeeded) + 1.0;
    const double s = static_cast<double>(stats.rounds.size());
    const double bound =
        kTreeWorkConstant * u * (1.0 + std::log2(std::max(1.0, static_cast<double>(r.n) * s / u)));
    add("tree_work", static_cast<double>(stats.tree.interior_touches()), bound);
  }
  return r;
}

}  // namespace sssp
