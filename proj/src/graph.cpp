#include "lwheel/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "lwheel/errors.hpp"
#include "lwheel/gf2.hpp"

namespace lwheel {

bool Graph::adjacent(Vertex u, Vertex v) const {
  const auto& nu = adj_.at(u);
  return std::binary_search(nu.begin(), nu.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < adj_.size(); ++u)
    for (Vertex v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

Graph Graph::without_edge(Vertex u, Vertex v) const {
  if (!adjacent(u, v)) throw InputError("without_edge: vertices are not adjacent");
  Graph g = *this;
  std::erase(g.adj_[u], v);
  std::erase(g.adj_[v], u);
  --g.edge_count_;
  return g;
}

Graph Graph::with_edge(Vertex u, Vertex v) const {
  GraphBuilder b(order());
  for (auto [a, c] : edges()) b.add_edge(a, c);
  b.add_edge(u, v);
  return std::move(b).build();
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  GraphBuilder b(n);
  for (auto [u, v] : edges) b.add_edge(u, v);
  return std::move(b).build();
}

Vertex GraphBuilder::add_vertex() {
  adj_.emplace_back();
  return static_cast<Vertex>(adj_.size() - 1);
}

void GraphBuilder::add_edge(Vertex u, Vertex v) {
  if (u >= adj_.size() || v >= adj_.size())
    throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                     ") references a vertex outside 0.." + std::to_string(adj_.size()));
  if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
  adj_[u].push_back(v);
  adj_[v].push_back(u);
}

Graph GraphBuilder::build() && {
  Graph g;
  std::size_t degree_sum = 0;
  for (auto& nbrs : adj_) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    degree_sum += nbrs.size();
  }
  g.adj_ = std::move(adj_);
  g.edge_count_ = degree_sum / 2;
  return g;
}

std::optional<std::size_t> girth(const Graph& g) {
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  const std::size_t n = g.order();
  std::size_t best = kUnseen;
  std::vector<std::size_t> dist(n, kUnseen);
  std::vector<Vertex> parent(n, 0);
  std::vector<Vertex> touched;
  std::deque<Vertex> queue;
  for (Vertex root = 0; root < n; ++root) {
    for (Vertex t : touched) dist[t] = kUnseen;
    touched.clear();
    queue.clear();
    dist[root] = 0;
    touched.push_back(root);
    queue.push_back(root);
    while (!queue.empty()) {
      const Vertex u = queue.front();
      queue.pop_front();
      // Any cycle found from here on has length at least 2 * dist[u].
      if (2 * dist[u] >= best) break;
      for (Vertex w : g.neighbors(u)) {
        if (dist[w] == kUnseen) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          touched.push_back(w);
          queue.push_back(w);
        } else if (u == root || parent[u] != w) {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  if (best == kUnseen) return std::nullopt;
  return best;
}

namespace {

std::size_t count_common(std::span<const Vertex> a, std::span<const Vertex> b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

std::vector<Vertex> common(std::span<const Vertex> a, std::span<const Vertex> b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

SmallPatternReport small_pattern_report(const Graph& g) {
  SmallPatternReport rep;
  for (auto [u, v] : g.edges()) {
    const auto cn = common(g.neighbors(u), g.neighbors(v));
    if (cn.empty()) continue;
    rep.has_triangle = true;
    for (std::size_t i = 0; i < cn.size(); ++i) {
      for (std::size_t j = i + 1; j < cn.size(); ++j) {
        if (g.adjacent(cn[i], cn[j])) {
          rep.has_k4 = true;
        } else {
          rep.has_diamond = true;
        }
      }
    }
    if (rep.has_k4 && rep.has_diamond) break;
  }

  // K_{3,3} subgraph: a triple {a,b,c} with at least three common neighbours.
  // Common neighbours of a vertex set never lie inside the set.
  const std::size_t n = g.order();
  std::vector<char> seen(n, 0);
  std::vector<Vertex> second;
  for (Vertex a = 0; a < n && !rep.has_k33_subgraph; ++a) {
    second.clear();
    for (Vertex x : g.neighbors(a))
      for (Vertex b : g.neighbors(x))
        if (b > a && !seen[b]) {
          seen[b] = 1;
          second.push_back(b);
        }
    for (Vertex b : second) seen[b] = 0;
    std::sort(second.begin(), second.end());
    for (std::size_t i = 0; i < second.size() && !rep.has_k33_subgraph; ++i) {
      const Vertex b = second[i];
      const auto cab = common(g.neighbors(a), g.neighbors(b));
      if (cab.size() < 3) continue;
      for (std::size_t j = i + 1; j < second.size(); ++j) {
        if (count_common(cab, g.neighbors(second[j])) >= 3) {
          rep.has_k33_subgraph = true;
          break;
        }
      }
    }
  }
  return rep;
}

std::size_t cutrank(const Graph& g, std::span<const Vertex> x) {
  const std::size_t n = g.order();
  std::vector<char> in_x(n, 0);
  std::vector<Vertex> rows;
  for (Vertex v : x) {
    if (v >= n) throw InputError("cutrank: vertex " + std::to_string(v) + " is not in the graph");
    if (!in_x[v]) rows.push_back(v);
    in_x[v] = 1;
  }
  std::vector<std::size_t> col_of(n, 0);
  std::size_t cols = 0;
  for (Vertex v = 0; v < n; ++v)
    if (!in_x[v]) col_of[v] = cols++;
  GF2Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (Vertex w : g.neighbors(rows[r]))
      if (!in_x[w]) m.set(r, col_of[w], true);
  return gf2_rank(m);
}

bool induces_connected(const Graph& g, std::span<const Vertex> set) {
  if (set.empty()) return true;
  std::vector<char> in_set(g.order(), 0);
  for (Vertex v : set) in_set.at(v) = 1;
  std::vector<char> seen(g.order(), 0);
  std::vector<Vertex> stack{set.front()};
  seen[set.front()] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(u)) {
      if (in_set[w] && !seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  std::size_t distinct = 0;
  for (Vertex v : set)
    if (in_set[v]) {
      ++distinct;
      in_set[v] = 0;
    }
  return reached == distinct;
}

}  // namespace lwheel
