#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace lwheel {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Finite simple undirected graph on vertices 0..n-1.
///
/// Neighbor lists are kept sorted, so iteration order is deterministic and
/// adjacency tests are a binary search. Instances are immutable; build them
/// with GraphBuilder.
class Graph {
 public:
  Graph() = default;

  std::size_t order() const noexcept { return adj_.size(); }
  std::size_t size() const noexcept { return edge_count_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_.at(v); }
  std::size_t degree(Vertex v) const { return adj_.at(v).size(); }
  bool adjacent(Vertex u, Vertex v) const;

  // All edges as (u, v) with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  Graph without_edge(Vertex u, Vertex v) const;
  Graph with_edge(Vertex u, Vertex v) const;

  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend class GraphBuilder;
  std::vector<std::vector<Vertex>> adj_;
  std::size_t edge_count_ = 0;
};

class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t n = 0) : adj_(n) {}

  Vertex add_vertex();
  // Throws InputError on self-loops or ids out of range. Repeated edges merge.
  void add_edge(Vertex u, Vertex v);
  std::size_t order() const noexcept { return adj_.size(); }

  Graph build() &&;

 private:
  std::vector<std::vector<Vertex>> adj_;
};

/// Length of a shortest cycle; nullopt for forests.
std::optional<std::size_t> girth(const Graph& g);

struct SmallPatternReport {
  bool has_triangle = false;
  bool has_k4 = false;
  bool has_diamond = false;        // induced K4 minus an edge
  bool has_k33_subgraph = false;   // not necessarily induced

  friend bool operator==(const SmallPatternReport&, const SmallPatternReport&) = default;
};

SmallPatternReport small_pattern_report(const Graph& g);

/// GF(2) rank of A[X, V \ X]. Throws InputError for ids outside the graph.
std::size_t cutrank(const Graph& g, std::span<const Vertex> x);

/// True iff every vertex of `set` is reachable from every other inside g[set].
bool induces_connected(const Graph& g, std::span<const Vertex> set);

}  // namespace lwheel
