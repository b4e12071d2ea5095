#include "sssp/graph.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "sssp/error.hpp"
#include "sssp/parallel.hpp"
#include "sssp/random.hpp"

namespace sssp {
namespace {

constexpr std::array<char, 8> kMagic = {'S', 'S', 'S', 'P', 'C', 'S', 'R', '1'};

std::uint64_t digest(std::uint64_t h, std::uint64_t x) {
  return (h ^ mix64(x)) * 0x100000001b3ULL;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::uint64_t parse_u64(std::string_view tok, std::size_t line) {
  std::uint64_t v = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    fail(ErrorKind::kParse, "line " + std::to_string(line) +
                                ": malformed token '" + std::string(tok) + "'");
  }
  return v;
}

template <typename T>
void write_le(std::ostream& out, std::span<const T> values) {
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size_bytes()));
  } else {
    for (T v : values) {
      std::array<char, sizeof(T)> bytes;
      for (std::size_t i = 0; i < sizeof(T); ++i)
        bytes[i] = static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff);
      out.write(bytes.data(), bytes.size());
    }
  }
}

template <typename T>
void read_le(std::istream& in, std::span<T> values) {
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(values.size_bytes()));
  if (static_cast<std::size_t>(in.gcount()) != values.size_bytes())
    fail(ErrorKind::kFormat, "truncated graph file");
  if constexpr (std::endian::native != std::endian::little) {
    for (T& v : values) {
      auto* b = reinterpret_cast<unsigned char*>(&v);
      std::reverse(b, b + sizeof(T));
    }
  }
}

}  // namespace

Graph::Graph(std::vector<EdgeIndex> offsets, std::vector<VertexId> targets,
             std::vector<Weight> weights, bool directed)
    : n_(offsets.empty() ? 0 : offsets.size() - 1),
      directed_(directed),
      offsets_(std::move(offsets)),
      targets_(std::move(targets)),
      weights_(std::move(weights)) {
  if (offsets_.empty()) offsets_.push_back(0);
  if (offsets_.front() != 0 || offsets_.back() != targets_.size() ||
      targets_.size() != weights_.size())
    fail(ErrorKind::kFormat, "inconsistent CSR arrays");
  for (std::size_t i = 0; i + 1 < offsets_.size(); ++i)
    if (offsets_[i] > offsets_[i + 1])
      fail(ErrorKind::kFormat, "CSR offsets are not monotone");
  if (!weights_.empty())
    max_weight_ = *std::max_element(weights_.begin(), weights_.end());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = digest(h, n_);
  h = digest(h, directed_ ? 1 : 0);
  for (auto o : offsets_) h = digest(h, o);
  for (std::size_t i = 0; i < targets_.size(); ++i)
    h = digest(h, (std::uint64_t{targets_[i]} << 32) | weights_[i]);
  fingerprint_ = h;
}

EdgeList parse_edge_list(std::string_view text) {
  EdgeList out;
  bool have_header = false;
  std::uint64_t max_id = 0;
  std::size_t max_id_line = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    const auto tokens = split_tokens(line);
    if (tokens.empty()) continue;
    const char lead = tokens[0][0];
    if (lead == '#' || lead == 'c') continue;
    if (lead == 'p') {
      // `p <n> <m>`, tolerating a DIMACS-style problem tag (`p sp <n> <m>`).
      std::size_t first = 1;
      if (tokens.size() == 4) first = 2;
      if (tokens[0] != "p" || tokens.size() != first + 2)
        fail(ErrorKind::kParse,
             "line " + std::to_string(line_no) + ": malformed header");
      out.n = parse_u64(tokens[first], line_no);
      parse_u64(tokens[first + 1], line_no);
      have_header = true;
      if (!out.edges.empty() && max_id >= out.n)
        fail(ErrorKind::kRange, "line " + std::to_string(max_id_line) +
                                    ": vertex id " + std::to_string(max_id) +
                                    " >= n=" + std::to_string(out.n));
      continue;
    }
    if (tokens.size() != 3)
      fail(ErrorKind::kParse, "line " + std::to_string(line_no) +
                                  ": expected 'u v w', got " +
                                  std::to_string(tokens.size()) + " tokens");
    const std::uint64_t u = parse_u64(tokens[0], line_no);
    const std::uint64_t v = parse_u64(tokens[1], line_no);
    const std::uint64_t w = parse_u64(tokens[2], line_no);
    if (w > std::numeric_limits<Weight>::max())
      fail(ErrorKind::kRange,
           "line " + std::to_string(line_no) + ": weight does not fit 32 bits");
    const std::uint64_t hi = std::max(u, v);
    if (hi >= kMaxVertices)
      fail(ErrorKind::kRange,
           "line " + std::to_string(line_no) + ": vertex id too large");
    if (have_header && hi >= out.n)
      fail(ErrorKind::kRange, "line " + std::to_string(line_no) +
                                  ": vertex id " + std::to_string(hi) +
                                  " >= n=" + std::to_string(out.n));
    if (out.edges.empty() || hi > max_id) {
      max_id = hi;
      max_id_line = line_no;
    }
    out.edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v),
                         static_cast<Weight>(w)});
  }
  if (!have_header) out.n = out.edges.empty() ? 0 : max_id + 1;
  return out;
}

EdgeList read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_edge_list(ss.str());
}

void write_edge_list(const EdgeList& e, std::ostream& out) {
  out << "p " << e.n << ' ' << e.edges.size() << '\n';
  for (const auto& x : e.edges) out << x.src << ' ' << x.dst << ' ' << x.w << '\n';
}

EdgeList generate_random_graph(std::uint64_t n, std::uint64_t m,
                               std::uint64_t seed) {
  const std::uint64_t max_pairs = n < 2 ? 0 : n * (n - 1) / 2;
  if (m > max_pairs)
    fail(ErrorKind::kInfeasible,
         "infeasible: " + std::to_string(m) + " distinct edges requested but n=" +
             std::to_string(n) + " allows at most " + std::to_string(max_pairs));
  if (n > kMaxVertices) fail(ErrorKind::kInfeasible, "infeasible: n exceeds 2^31");

  Rng rng(seed);
  EdgeList out;
  out.n = n;
  out.edges.reserve(m);
  auto pair_of = [n](std::uint64_t key) {
    return std::pair<std::uint64_t, std::uint64_t>{key / n, key % n};
  };

  std::vector<std::uint64_t> keys;  // key = lo * n + hi with lo < hi
  if (m * 2 > max_pairs) {
    // Dense request: select m of all pairs by partial Fisher-Yates.
    keys.reserve(max_pairs);
    for (std::uint64_t a = 0; a < n; ++a)
      for (std::uint64_t b = a + 1; b < n; ++b) keys.push_back(a * n + b);
    for (std::uint64_t i = 0; i < m; ++i)
      std::swap(keys[i], keys[i + uniform_below(rng, max_pairs - i)]);
    keys.resize(m);
  } else {
    // Sparse request: draw candidates, keep the first occurrence of each pair
    // in draw order, top up until m survive.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> drawn;  // (key, order)
    std::uint64_t order = 0;
    while (true) {
      const std::uint64_t want = m - std::min<std::uint64_t>(m, drawn.size());
      if (want == 0) break;
      const std::uint64_t batch = want + want / 8 + 16;
      for (std::uint64_t i = 0; i < batch; ++i) {
        std::uint64_t a = uniform_below(rng, n), b = uniform_below(rng, n - 1);
        if (b >= a) ++b;
        if (a > b) std::swap(a, b);
        drawn.emplace_back(a * n + b, order++);
      }
      std::sort(drawn.begin(), drawn.end());
      drawn.erase(std::unique(drawn.begin(), drawn.end(),
                              [](auto& x, auto& y) { return x.first == y.first; }),
                  drawn.end());
    }
    std::sort(drawn.begin(), drawn.end(),
              [](auto& x, auto& y) { return x.second < y.second; });
    drawn.resize(m);
    keys.reserve(m);
    for (auto& d : drawn) keys.push_back(d.first);
  }
  for (std::uint64_t key : keys) {
    auto [a, b] = pair_of(key);
    if (rng() & 1) std::swap(a, b);
    out.edges.push_back({static_cast<VertexId>(a), static_cast<VertexId>(b), 1});
  }
  return out;
}

EdgeList assign_uniform_weights(EdgeList e, std::uint64_t seed, Weight lo,
                                Weight hi) {
  if (lo < 1)
    fail(ErrorKind::kInvalidArgument,
         "minimum weight must be >= 1 (weights are normalized to min 1)");
  if (hi <= lo) fail(ErrorKind::kInvalidArgument, "weight range [lo, hi) is empty");
  Rng rng(seed);
  const std::uint64_t span = hi - lo;
  for (auto& x : e.edges) x.w = static_cast<Weight>(lo + uniform_below(rng, span));
  return e;
}

Graph build_csr(const EdgeList& e, bool directed) {
  if (e.n > kMaxVertices) fail(ErrorKind::kRange, "vertex count exceeds 2^31");
  const std::uint64_t n = e.n;
  std::vector<EdgeIndex> degree(n + 1, 0);
  for (const auto& x : e.edges) {
    if (x.src >= n || x.dst >= n)
      fail(ErrorKind::kRange, "edge (" + std::to_string(x.src) + "," +
                                  std::to_string(x.dst) + ") outside [0, " +
                                  std::to_string(n) + ")");
    if (x.w < 1) fail(ErrorKind::kInvalidArgument, "edge weight must be >= 1");
    if (x.src == x.dst) continue;
    ++degree[x.src + 1];
    if (!directed) ++degree[x.dst + 1];
  }
  std::partial_sum(degree.begin(), degree.end(), degree.begin());

  struct Arc {
    VertexId v;
    Weight w;
  };
  std::vector<Arc> arcs(degree[n]);
  {
    std::vector<EdgeIndex> cursor(degree.begin(), degree.end() - 1);
    for (const auto& x : e.edges) {
      if (x.src == x.dst) continue;
      arcs[cursor[x.src]++] = {x.dst, x.w};
      if (!directed) arcs[cursor[x.dst]++] = {x.src, x.w};
    }
  }

  // Canonicalize each neighborhood: sort by (target, weight), keep the
  // lightest of each parallel group.
  std::vector<EdgeIndex> kept(n + 1, 0);
  par::parallel_for(n, [&](std::size_t u) {
    auto first = arcs.begin() + static_cast<std::ptrdiff_t>(degree[u]);
    auto last = arcs.begin() + static_cast<std::ptrdiff_t>(degree[u + 1]);
    std::sort(first, last, [](const Arc& a, const Arc& b) {
      return a.v != b.v ? a.v < b.v : a.w < b.w;
    });
    auto end = std::unique(first, last, [](const Arc& a, const Arc& b) { return a.v == b.v; });
    kept[u + 1] = static_cast<EdgeIndex>(end - first);
  });
  std::partial_sum(kept.begin(), kept.end(), kept.begin());

  std::vector<VertexId> targets(kept[n]);
  std::vector<Weight> weights(kept[n]);
  par::parallel_for(n, [&](std::size_t u) {
    const EdgeIndex count = kept[u + 1] - kept[u];
    for (EdgeIndex i = 0; i < count; ++i) {
      targets[kept[u] + i] = arcs[degree[u] + i].v;
      weights[kept[u] + i] = arcs[degree[u] + i].w;
    }
  });
  return Graph(std::move(kept), std::move(targets), std::move(weights), directed);
}

EdgeList to_edge_list(const Graph& g) {
  EdgeList e;
  e.n = g.num_vertices();
  for (VertexId u = 0; u < g.num_vertices(); ++u) {
    const auto nb = g.neighbors(u);
    const auto ws = g.neighbor_weights(u);
    for (std::size_t i = 0; i < nb.size(); ++i)
      if (g.directed() || u < nb[i]) e.edges.push_back({u, nb[i], ws[i]});
  }
  return e;
}

void write_binary(const Graph& g, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  const std::array<std::uint64_t, 2> header = {g.num_vertices(), g.num_arcs()};
  write_le<std::uint64_t>(out, header);
  const std::array<char, 8> flags = {static_cast<char>(g.directed() ? 1 : 0), 0, 0, 0, 0, 0, 0, 0};
  out.write(flags.data(), flags.size());
  write_le<EdgeIndex>(out, g.offsets());
  write_le<VertexId>(out, g.targets());
  write_le<Weight>(out, g.weights());
  if (!out) fail(ErrorKind::kIo, "write failed");
}

Graph read_binary(std::istream& in) {
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (in.gcount() != static_cast<std::streamsize>(magic.size()))
    fail(ErrorKind::kFormat, "truncated graph file: missing magic");
  if (std::memcmp(magic.data(), kMagic.data(), 7) != 0)
    fail(ErrorKind::kFormat, "bad magic: expected 'SSSPCSR1'");
  if (magic[7] != kMagic[7])
    fail(ErrorKind::kFormat, std::string("unsupported format version '") +
                                 magic[7] + "', expected 'SSSPCSR1'");
  std::array<std::uint64_t, 2> header{};
  read_le<std::uint64_t>(in, header);
  const auto [n, m] = header;
  std::array<char, 8> flags{};
  in.read(flags.data(), flags.size());
  if (in.gcount() != static_cast<std::streamsize>(flags.size()))
    fail(ErrorKind::kFormat, "truncated graph file: missing header");
  if (flags[0] != 0 && flags[0] != 1) fail(ErrorKind::kFormat, "bad directed flag");
  if (n > kMaxVertices) fail(ErrorKind::kFormat, "vertex count exceeds 2^31");

  // Refuse sizes the stream cannot hold before allocating.
  const auto here = in.tellg();
  if (here != std::streampos(-1)) {
    in.seekg(0, std::ios::end);
    const auto end = in.tellg();
    in.seekg(here);
    const std::uint64_t need = (n + 1) * 8 + m * 8;
    if (static_cast<std::uint64_t>(end - here) < need)
      fail(ErrorKind::kFormat, "truncated graph file: payload shorter than header declares");
  }
  std::vector<EdgeIndex> offsets(n + 1);
  std::vector<VertexId> targets(m);
  std::vector<Weight> weights(m);
  read_le<EdgeIndex>(in, offsets);
  read_le<VertexId>(in, targets);
  read_le<Weight>(in, weights);
  for (std::size_t i = 0; i < m; ++i) {
    if (targets[i] >= n) fail(ErrorKind::kFormat, "arc target out of range");
    if (weights[i] < 1) fail(ErrorKind::kFormat, "arc weight below 1");
  }
  return Graph(std::move(offsets), std::move(targets), std::move(weights), flags[0] == 1);
}

void save_binary(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  write_binary(g, out);
}

Graph load_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  return read_binary(in);
}

Graph load_graph(const std::filesystem::path& path, bool directed_if_text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  std::array<char, 7> head{};
  in.read(head.data(), head.size());
  const bool binary = in.gcount() == 7 && std::memcmp(head.data(), kMagic.data(), 7) == 0;
  in.close();
  if (binary) return load_binary(path);
  return build_csr(read_edge_list(path), directed_if_text);
}

Graph make_chain(std::uint64_t n, Weight w, bool directed) {
  EdgeList e;
  e.n = n;
  for (std::uint64_t i = 0; i + 1 < n; ++i)
    e.edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(i + 1), w});
  return build_csr(e, directed);
}

Graph make_star(std::uint64_t leaves, Weight w) {
  EdgeList e;
  e.n = leaves + 1;
  for (std::uint64_t i = 1; i <= leaves; ++i)
    e.edges.push_back({0, static_cast<VertexId>(i), w});
  return build_csr(e, false);
}

Graph make_grid(std::uint64_t rows, std::uint64_t cols, std::uint64_t seed,
                Weight lo, Weight hi) {
  EdgeList e;
  e.n = rows * cols;
  for (std::uint64_t r = 0; r < rows; ++r)
    for (std::uint64_t c = 0; c < cols; ++c) {
      const auto id = static_cast<VertexId>(r * cols + c);
      if (c + 1 < cols) e.edges.push_back({id, id + 1, 1});
      if (r + 1 < rows) e.edges.push_back({id, static_cast<VertexId>(id + cols), 1});
    }
  return build_csr(assign_uniform_weights(std::move(e), seed, lo, hi), false);
}

}  // namespace sssp
