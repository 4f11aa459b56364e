#include "negtype/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <utility>

#include "negtype/error.hpp"

namespace negtype {

Graph::Graph(std::size_t n, const std::vector<Edge>& edges) : n_(n) {
  for (const auto& e : edges) add_edge(e.u, e.v, e.weight);
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
  if (u > v) std::swap(u, v);
  return std::any_of(edges_.begin(), edges_.end(),
                     [&](const Edge& e) { return e.u == u && e.v == v; });
}

bool Graph::unit_weights() const noexcept {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.weight == 1.0; });
}

void Graph::add_edge(std::size_t u, std::size_t v, double weight) {
  if (u >= n_ || v >= n_) throw Error(ErrorKind::BadSize, {u, v}, "vertex id out of range");
  if (u == v) throw Error(ErrorKind::SelfLoop, {u}, "self-loop");
  if (!(weight > 0.0) || !std::isfinite(weight))
    throw Error(ErrorKind::NonpositiveWeight, {u, v}, "edge weight must be positive");
  if (has_edge(u, v)) throw Error(ErrorKind::DuplicateEdge, {u, v}, "duplicate edge");
  if (u > v) std::swap(u, v);
  edges_.push_back({u, v, weight});
}

namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view tok, T& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
  struct Pending {
    std::size_t u, v;
    double w;
    std::size_t line;
  };
  std::optional<std::size_t> declared_n;
  std::vector<Pending> pending;
  bool seen_data = false;

  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto toks = split_ws(line);
    if (toks.empty()) continue;

    if (toks[0] == "n") {
      std::size_t count = 0;
      if (seen_data || declared_n || toks.size() != 2 || !parse_number(toks[1], count))
        throw Error(ErrorKind::ParseError, {lineno}, "malformed 'n <count>' header");
      declared_n = count;
      continue;
    }
    if (toks.size() != 2 && toks.size() != 3)
      throw Error(ErrorKind::ParseError, {lineno}, "expected 'u v' or 'u v w'");
    Pending p{0, 0, 1.0, lineno};
    if (!parse_number(toks[0], p.u) || !parse_number(toks[1], p.v))
      throw Error(ErrorKind::ParseError, {lineno}, "vertex ids must be non-negative integers");
    if (toks.size() == 3 && !parse_number(toks[2], p.w))
      throw Error(ErrorKind::ParseError, {lineno}, "bad weight");
    seen_data = true;
    pending.push_back(p);
  }

  std::size_t n = declared_n.value_or(0);
  if (!declared_n)
    for (const auto& p : pending) n = std::max({n, p.u + 1, p.v + 1});

  Graph g(n);
  for (const auto& p : pending) {
    if (p.u >= n || p.v >= n)
      throw Error(ErrorKind::ParseError, {p.line}, "vertex id exceeds declared count");
    if (p.u == p.v) throw Error(ErrorKind::SelfLoop, {p.line}, "self-loop");
    if (!(p.w > 0.0) || !std::isfinite(p.w))
      throw Error(ErrorKind::NonpositiveWeight, {p.line}, "edge weight must be positive");
    if (g.has_edge(p.u, p.v)) throw Error(ErrorKind::DuplicateEdge, {p.line}, "duplicate edge");
    g.add_edge(p.u, p.v, p.w);
  }
  return g;
}

MetricSpace path_metric(const Graph& g) {
  const std::size_t n = g.size();
  if (n == 0) throw Error(ErrorKind::BadSize, {n}, "empty graph");
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.u].push_back({e.v, e.weight});
    adj[e.v].push_back({e.u, e.weight});
  }

  Matrix d(n, n, kInf);
  const bool unit = g.unit_weights();
  for (std::size_t s = 0; s < n; ++s) {
    d(s, s) = 0.0;
    if (unit) {
      std::queue<std::size_t> q;
      q.push(s);
      while (!q.empty()) {
        const std::size_t x = q.front();
        q.pop();
        for (auto [y, w] : adj[x])
          if (d(s, y) == kInf) {
            d(s, y) = d(s, x) + 1.0;
            q.push(y);
          }
      }
    } else {
      using Item = std::pair<double, std::size_t>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      pq.push({0.0, s});
      while (!pq.empty()) {
        auto [dx, x] = pq.top();
        pq.pop();
        if (dx > d(s, x)) continue;
        for (auto [y, w] : adj[x])
          if (dx + w < d(s, y)) {
            d(s, y) = dx + w;
            pq.push({d(s, y), y});
          }
      }
    }
    for (std::size_t t = 0; t < n; ++t)
      if (d(s, t) == kInf) throw Error(ErrorKind::Disconnected, {s, t}, "no path between vertices");
  }
  // Dijkstra sums in different orders per source; make the matrix exactly symmetric.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d(j, i) = d(i, j) = std::min(d(i, j), d(j, i));
  return validate_metric(std::move(d));
}

Graph complete(std::size_t n) {
  if (n < 1) throw Error(ErrorKind::BadSize, {n}, "complete graph needs n >= 1");
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Graph path_graph(std::size_t n) {
  if (n < 1) throw Error(ErrorKind::BadSize, {n}, "path needs n >= 1");
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph cycle(std::size_t n) {
  if (n < 3) throw Error(ErrorKind::BadSize, {n}, "cycle needs n >= 3");
  Graph g = path_graph(n);
  g.add_edge(n - 1, 0);
  return g;
}

Graph complete_bipartite(std::size_t n, std::size_t m) {
  if (n < 1 || m < 1) throw Error(ErrorKind::BadSize, {n, m}, "both parts need at least one vertex");
  Graph g(n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) g.add_edge(i, n + j);
  return g;
}

namespace fixtures {

Graph g1() { return Graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {3, 4}}); }
Graph g2() { return Graph(5, {{0, 1}, {0, 2}, {0, 3}, {3, 4}}); }
Graph g3() { return cycle(5); }
Graph h1() { return Graph(4, {{0, 1}, {0, 2}, {0, 3}}); }
Graph h2() { return Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}}); }
Graph h3() { return Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}}); }

}  // namespace fixtures

namespace {

std::vector<std::size_t> parse_size_list(std::string_view args, std::string_view spec) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos <= args.size()) {
    const std::size_t comma = args.find(',', pos);
    const auto tok = args.substr(pos, comma == std::string_view::npos ? args.npos : comma - pos);
    std::size_t v = 0;
    if (tok.empty() || !parse_number(tok, v))
      throw Error(ErrorKind::BadArgument, "bad generator arguments in '" + std::string(spec) + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

Graph generate(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw Error(ErrorKind::BadArgument, "generator spec must look like name:args, got '" + std::string(spec) + "'");
  const auto name = spec.substr(0, colon);
  const auto args = spec.substr(colon + 1);

  if (name == "fixture") {
    if (args == "G1") return fixtures::g1();
    if (args == "G2") return fixtures::g2();
    if (args == "G3") return fixtures::g3();
    if (args == "H1") return fixtures::h1();
    if (args == "H2") return fixtures::h2();
    if (args == "H3") return fixtures::h3();
    throw Error(ErrorKind::BadArgument, "unknown fixture '" + std::string(args) + "'");
  }
  const auto sizes = parse_size_list(args, spec);
  auto expect = [&](std::size_t count) {
    if (sizes.size() != count)
      throw Error(ErrorKind::BadArgument, "wrong number of arguments in '" + std::string(spec) + "'");
  };
  if (name == "kbipartite") {
    expect(2);
    return complete_bipartite(sizes[0], sizes[1]);
  }
  expect(1);
  if (name == "complete") return complete(sizes[0]);
  if (name == "path") return path_graph(sizes[0]);
  if (name == "cycle") return cycle(sizes[0]);
  throw Error(ErrorKind::BadArgument, "unknown generator '" + std::string(name) + "'");
}

std::vector<Edge> edge_slots(std::size_t n) {
  std::vector<Edge> slots;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) slots.push_back({i, j, 1.0});
  return slots;
}

Graph graph_from_mask(std::size_t n, std::uint64_t mask) {
  Graph g(n);
  const auto slots = edge_slots(n);
  for (std::size_t k = 0; k < slots.size(); ++k)
    if (mask >> k & 1u) g.add_edge(slots[k].u, slots[k].v);
  return g;
}

ConnectedGraphEnumerator::ConnectedGraphEnumerator(std::size_t n) : n_(n), slots_(edge_slots(n)) {
  if (n < 1) throw Error(ErrorKind::BadSize, {n}, "enumeration needs n >= 1");
  if (n > kMaxEnumerationSize) throw Error(ErrorKind::TooLarge, {n}, "enumeration is capped at 7 vertices");
  end_mask_ = std::uint64_t{1} << slots_.size();
}

bool ConnectedGraphEnumerator::connected(std::uint64_t mask) const {
  std::vector<std::uint32_t> nbrs(n_, 0);
  for (std::size_t k = 0; k < slots_.size(); ++k)
    if (mask >> k & 1u) {
      nbrs[slots_[k].u] |= 1u << slots_[k].v;
      nbrs[slots_[k].v] |= 1u << slots_[k].u;
    }
  std::uint32_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint32_t next = 0;
    for (std::size_t v = 0; v < n_; ++v)
      if (frontier >> v & 1u) next |= nbrs[v];
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (1u << n_) - 1u;
}

std::optional<ConnectedGraphEnumerator::Item> ConnectedGraphEnumerator::next() {
  while (next_mask_ < end_mask_) {
    const std::uint64_t mask = next_mask_++;
    if (connected(mask)) return Item{mask, graph_from_mask(n_, mask)};
  }
  return std::nullopt;
}

std::vector<Graph> enumerate_connected_graphs(std::size_t n) {
  ConnectedGraphEnumerator e(n);
  std::vector<Graph> out;
  while (auto item = e.next()) out.push_back(std::move(item->graph));
  return out;
}

std::string edges_to_string(const Graph& g) {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < g.edges().size(); ++k) {
    const auto& e = g.edges()[k];
    if (k) os << ',';
    os << e.u << '-' << e.v;
  }
  os << '}';
  return os.str();
}

}  // namespace negtype
