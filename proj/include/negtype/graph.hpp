#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "negtype/metric.hpp"

namespace negtype {

struct Edge {
  std::size_t u;
  std::size_t v;
  double weight = 1.0;
};

/// Simple undirected graph with positive edge weights. Edges are stored
/// with u < v in insertion order.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n) {}
  Graph(std::size_t n, const std::vector<Edge>& edges);

  std::size_t size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool has_edge(std::size_t u, std::size_t v) const;
  bool unit_weights() const noexcept;

  /// Throws SelfLoop, DuplicateEdge, NonpositiveWeight or BadSize (vertex
  /// id out of range).
  void add_edge(std::size_t u, std::size_t v, double weight = 1.0);

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

/// Edge-list text: `#` comments, optional `n <count>` header, then lines
/// `u v` or `u v w`. Errors carry the 1-based line number.
Graph parse_edge_list(std::string_view text);

/// All-pairs shortest paths (BFS for unit weights, Dijkstra otherwise).
/// Throws Error{Disconnected} naming one unreachable pair.
MetricSpace path_metric(const Graph& g);

Graph complete(std::size_t n);
Graph path_graph(std::size_t n);
Graph cycle(std::size_t n);
/// Part one is vertices 0..n-1, part two n..n+m-1.
Graph complete_bipartite(std::size_t n, std::size_t m);

namespace fixtures {
/// Star on v1 with leaves v2..v5 plus the edge v4v5.
Graph g1();
/// Star v1-{v2,v3,v4} with the pendant edge v4v5.
Graph g2();
/// 5-cycle.
Graph g3();
/// Claw K_{1,3} centred on v1.
Graph h1();
/// h1 plus v2v3.
Graph h2();
/// h2 plus v3v4.
Graph h3();
}  // namespace fixtures

/// Looks up a generator spec such as "cycle:5", "kbipartite:2,3",
/// "path:4", "complete:4" or "fixture:G1". Throws Error{BadArgument}.
Graph generate(std::string_view spec);

inline constexpr std::size_t kMaxEnumerationSize = 7;

/// Edge slots of the complete graph on n vertices in the order the
/// enumeration bitmask uses: (0,1),(0,2),...,(0,n-1),(1,2),...
std::vector<Edge> edge_slots(std::size_t n);
Graph graph_from_mask(std::size_t n, std::uint64_t mask);

/// Streams every labeled simple connected graph on n vertices in increasing
/// edge-bitmask order.
class ConnectedGraphEnumerator {
 public:
  explicit ConnectedGraphEnumerator(std::size_t n);

  struct Item {
    std::uint64_t mask;
    Graph graph;
  };
  std::optional<Item> next();

 private:
  bool connected(std::uint64_t mask) const;

  std::size_t n_;
  std::vector<Edge> slots_;
  std::uint64_t next_mask_ = 0;
  std::uint64_t end_mask_;
};

/// Convenience: collects ConnectedGraphEnumerator(n) into a vector.
std::vector<Graph> enumerate_connected_graphs(std::size_t n);

std::string edges_to_string(const Graph& g);

}  // namespace negtype
