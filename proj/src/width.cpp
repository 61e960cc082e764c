#include "lwheel/width.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "lwheel/errors.hpp"

namespace lwheel {

namespace {
std::string vs(std::size_t v) { return std::to_string(v); }
constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();
}  // namespace

// --- minors -----------------------------------------------------------------

std::optional<std::string> check_minor(const Graph& g, const MinorCertificate& c) {
  const std::size_t k = c.branch_sets.size();
  std::vector<std::size_t> owner(g.order(), k);
  for (std::size_t i = 0; i < k; ++i) {
    if (c.branch_sets[i].empty()) return "branch set " + vs(i) + " is empty";
    for (Vertex v : c.branch_sets[i]) {
      if (v >= g.order()) return "branch set " + vs(i) + " lists unknown vertex " + vs(v);
      if (owner[v] != k) return "vertex " + vs(v) + " lies in branch sets " + vs(owner[v]) + " and " + vs(i);
      owner[v] = i;
    }
    if (!induces_connected(g, c.branch_sets[i])) return "branch set " + vs(i) + " is not connected";
  }
  std::vector<char> joined(k * k, 0);
  for (const auto& [u, v] : g.edges()) {
    const std::size_t a = owner[u];
    const std::size_t b = owner[v];
    if (a == k || b == k || a == b) continue;
    joined[a * k + b] = joined[b * k + a] = 1;
  }
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      if (!joined[a * k + b]) return "no edge joins branch sets " + vs(a) + " and " + vs(b);
  return std::nullopt;
}

MinorCertificate minor_certificate(const LayeredWheel& w) {
  MinorCertificate c{w.layers()};
  if (auto err = check_minor(w.graph(), c)) throw IntegrityError("layers do not form a complete minor: " + *err);
  return c;
}

// --- interval model and path decomposition ------------------------------------

std::vector<Span> interval_model(const LayeredWheel& w) {
  const std::size_t l = w.l();
  const std::size_t last = w.layer(l).size();
  std::vector<Span> out(w.graph().order());
  for (Vertex v = 0; v < out.size(); ++v) {
    const auto& info = w.info(v);
    if (info.layer == l)
      out[v] = Span{l, info.pos, std::min(info.pos + 1, last - 1)};
    else
      out[v] = scope(w, v, l - info.layer);
  }
  return out;
}

std::optional<Edge> interval_embedding_failure(const LayeredWheel& w, const std::vector<Span>& model) {
  for (const auto& [u, v] : w.graph().edges()) {
    const Span& a = model.at(u);
    const Span& b = model.at(v);
    if (a.hi < b.lo || b.hi < a.lo) return Edge{u, v};
  }
  return std::nullopt;
}

std::size_t PathDecomposition::width() const {
  std::size_t best = 0;
  for (const auto& b : bags) best = std::max(best, b.size());
  return best == 0 ? 0 : best - 1;
}

std::optional<std::string> check_path_decomposition(const Graph& g, const PathDecomposition& pd) {
  const std::size_t n = g.order();
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> first(n, kUnset), last(n, kUnset), count(n, 0);
  for (std::size_t i = 0; i < pd.bags.size(); ++i) {
    for (Vertex v : pd.bags[i]) {
      if (v >= n) return "bag " + vs(i) + " lists unknown vertex " + vs(v);
      if (last[v] == i) return "bag " + vs(i) + " lists vertex " + vs(v) + " twice";
      if (first[v] == kUnset) first[v] = i;
      last[v] = i;
      ++count[v];
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (first[v] == kUnset) return "vertex " + vs(v) + " is in no bag";
    if (last[v] - first[v] + 1 != count[v]) return "bags holding vertex " + vs(v) + " are not consecutive";
  }
  for (const auto& [u, v] : g.edges())
    if (std::max(first[u], first[v]) > std::min(last[u], last[v]))
      return "edge " + vs(u) + "-" + vs(v) + " is in no bag";
  return std::nullopt;
}

PathDecompositionResult path_decomposition(const LayeredWheel& w) {
  const auto model = interval_model(w);
  const std::size_t positions = w.layer(w.l()).size();
  PathDecompositionResult res;
  res.pd.bags.assign(positions, {});
  for (Vertex v = 0; v < model.size(); ++v)
    for (std::size_t p = model[v].lo; p <= model[v].hi; ++p) res.pd.bags[p].push_back(v);
  for (const auto& b : res.pd.bags) res.max_coverage = std::max(res.max_coverage, b.size());
  res.width = res.pd.width();
  if (auto err = check_path_decomposition(w.graph(), res.pd))
    throw IntegrityError("interval path decomposition is invalid: " + *err);
  return res;
}

// --- cubic trees and rank decompositions --------------------------------------

std::vector<std::vector<Vertex>> CubicTree::adjacency() const {
  std::vector<std::vector<Vertex>> adj(nodes);
  for (const auto& [a, b] : edges) {
    adj.at(a).push_back(b);
    adj.at(b).push_back(a);
  }
  return adj;
}

std::vector<Vertex> CubicTree::leaves() const {
  std::vector<std::size_t> deg(nodes, 0);
  for (const auto& [a, b] : edges) ++deg.at(a), ++deg.at(b);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < nodes; ++v)
    if (deg[v] == 1) out.push_back(v);
  return out;
}

void check_cubic_tree(const CubicTree& t) {
  if (t.nodes < 2) throw InputError("cubic tree needs at least 2 nodes");
  if (t.edges.size() != t.nodes - 1) throw InputError("cubic tree on " + vs(t.nodes) + " nodes needs " + vs(t.nodes - 1) + " edges");
  for (const auto& [a, b] : t.edges)
    if (a >= t.nodes || b >= t.nodes || a == b) throw InputError("tree edge " + vs(a) + "-" + vs(b) + " is invalid");
  const auto adj = t.adjacency();
  for (Vertex v = 0; v < t.nodes; ++v)
    if (adj[v].size() != 1 && adj[v].size() != 3)
      throw InputError("tree node " + vs(v) + " has degree " + vs(adj[v].size()));
  std::vector<char> seen(t.nodes, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Vertex x = stack.back();
    stack.pop_back();
    for (Vertex y : adj[x])
      if (!seen[y]) seen[y] = 1, ++reached, stack.push_back(y);
  }
  if (reached != t.nodes) throw InputError("cubic tree is not connected");
}

void check_rank_decomposition(const Graph& g, const RankDecomposition& rd) {
  check_cubic_tree(rd.tree);
  const auto leaves = rd.tree.leaves();
  if (rd.leaf_of.size() != g.order() || leaves.size() != g.order())
    throw InputError("rank decomposition has " + vs(leaves.size()) + " leaves and maps " + vs(rd.leaf_of.size()) +
                     " vertices, graph has " + vs(g.order()));
  std::vector<char> is_leaf(rd.tree.nodes, 0), used(rd.tree.nodes, 0);
  for (Vertex x : leaves) is_leaf[x] = 1;
  for (Vertex v = 0; v < g.order(); ++v) {
    const Vertex x = rd.leaf_of[v];
    if (x >= rd.tree.nodes || !is_leaf[x]) throw InputError("vertex " + vs(v) + " maps to a non-leaf node");
    if (used[x]) throw InputError("leaf " + vs(x) + " holds two vertices");
    used[x] = 1;
  }
}

std::vector<Vertex> vertices_on_side(const RankDecomposition& rd, Edge e, Vertex side) {
  const Vertex other = side == e.first ? e.second : e.first;
  if (side != e.first && side != e.second) throw InputError("side must be an end of the edge");
  const auto adj = rd.tree.adjacency();
  std::vector<Vertex> vertex_at(rd.tree.nodes, kNoVertex);
  for (Vertex v = 0; v < rd.leaf_of.size(); ++v) vertex_at.at(rd.leaf_of[v]) = v;
  std::vector<char> seen(rd.tree.nodes, 0);
  seen[side] = seen[other] = 1;
  std::vector<Vertex> stack{side}, out;
  while (!stack.empty()) {
    const Vertex x = stack.back();
    stack.pop_back();
    if (vertex_at[x] != kNoVertex) out.push_back(vertex_at[x]);
    for (Vertex y : adj[x])
      if (!seen[y]) seen[y] = 1, stack.push_back(y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t rank_decomposition_width(const Graph& g, const RankDecomposition& rd) {
  if (g.order() <= 1) return 0;
  check_rank_decomposition(g, rd);
  std::size_t best = 0;
  for (const Edge& e : rd.tree.edges) best = std::max(best, cutrank(g, vertices_on_side(rd, e, e.first)));
  return best;
}

namespace {

// Rooted at node 0: parent and number of leaves below each node.
struct Rooted {
  std::vector<Vertex> parent;
  std::vector<std::size_t> below;
  std::size_t total = 0;

  // Leaves on the `to` side of the tree edge {from, to}.
  std::size_t side(Vertex from, Vertex to) const { return parent[to] == from ? below[to] : total - below[from]; }
};

Rooted root_tree(const CubicTree& t, const std::vector<std::vector<Vertex>>& adj) {
  Rooted r;
  r.parent.assign(t.nodes, kNoVertex);
  r.below.assign(t.nodes, 0);
  std::vector<Vertex> order{0};
  r.parent[0] = 0;
  for (std::size_t h = 0; h < order.size(); ++h)
    for (Vertex y : adj[order[h]])
      if (r.parent[y] == kNoVertex) r.parent[y] = order[h], order.push_back(y);
  for (std::size_t h = order.size(); h-- > 0;) {
    const Vertex x = order[h];
    if (adj[x].size() == 1) r.below[x] += 1;
    if (x != 0) r.below[r.parent[x]] += r.below[x];
  }
  r.parent[0] = kNoVertex;
  r.total = r.below[0];
  return r;
}

}  // namespace

std::pair<std::size_t, std::size_t> leaf_split(const CubicTree& t, Edge e) {
  const auto adj = t.adjacency();
  const Rooted r = root_tree(t, adj);
  if (r.parent[e.first] != e.second && r.parent[e.second] != e.first) throw InputError("not a tree edge");
  return {r.side(e.second, e.first), r.side(e.first, e.second)};
}

Edge find_balanced_edge(const CubicTree& t) {
  check_cubic_tree(t);
  const auto adj = t.adjacency();
  const Rooted r = root_tree(t, adj);
  const std::size_t total = r.total;
  Vertex a = t.leaves().front();
  Vertex b = adj[a][0];
  while (true) {
    const std::size_t on_a = r.side(b, a);
    const std::size_t on_b = total - on_a;
    if (3 * on_a >= total && 3 * on_b >= total) return {a, b};
    // on_a is the light side: step into b towards its heavier branch.
    Vertex next = kNoVertex;
    for (Vertex c : adj[b])
      if (c != a && (next == kNoVertex || r.side(b, c) > r.side(b, next))) next = c;
    a = b;
    b = next;
  }
}

namespace {

void check_order(std::span<const Vertex> order, std::size_t n) {
  if (order.size() != n) throw InputError("vertex order must list all " + vs(n) + " vertices");
  std::vector<char> seen(n, 0);
  for (Vertex v : order) {
    if (v >= n || seen[v]) throw InputError("vertex order is not a permutation");
    seen[v] = 1;
  }
}

}  // namespace

RankDecomposition caterpillar_decomposition(std::span<const Vertex> order, std::size_t n) {
  check_order(order, n);
  RankDecomposition rd;
  rd.leaf_of.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) rd.leaf_of[order[i]] = static_cast<Vertex>(i);
  if (n <= 2) {
    rd.tree.nodes = n;
    if (n == 2) rd.tree.edges.push_back({0, 1});
    return rd;
  }
  rd.tree.nodes = 2 * n - 2;
  auto spine = [&](std::size_t j) { return static_cast<Vertex>(n + j); };
  rd.tree.edges.push_back({0, spine(0)});
  rd.tree.edges.push_back({1, spine(0)});
  for (std::size_t i = 2; i + 1 < n; ++i) rd.tree.edges.push_back({static_cast<Vertex>(i), spine(i - 1)});
  rd.tree.edges.push_back({static_cast<Vertex>(n - 1), spine(n - 3)});
  for (std::size_t j = 0; j + 1 < n - 2; ++j) rd.tree.edges.push_back({spine(j), spine(j + 1)});
  return rd;
}

RankDecomposition bisection_decomposition(std::span<const Vertex> order, std::size_t n) {
  check_order(order, n);
  RankDecomposition rd;
  rd.leaf_of.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) rd.leaf_of[order[i]] = static_cast<Vertex>(i);
  rd.tree.nodes = n;
  if (n <= 1) return rd;
  auto build = [&](auto&& self, std::size_t lo, std::size_t hi) -> Vertex {
    if (hi - lo == 1) return static_cast<Vertex>(lo);
    const std::size_t mid = lo + (hi - lo) / 2;
    const Vertex left = self(self, lo, mid);
    const Vertex right = self(self, mid, hi);
    const Vertex x = static_cast<Vertex>(rd.tree.nodes++);
    rd.tree.edges.push_back({x, left});
    rd.tree.edges.push_back({x, right});
    return x;
  };
  const std::size_t mid = n / 2;
  const Vertex left = build(build, 0, mid);
  const Vertex right = build(build, mid, n);
  rd.tree.edges.push_back({left, right});
  return rd;
}

// --- separated layers and the rankwidth audit ----------------------------------

SeparatedLayers separated_layer_witness(const LayeredWheel& w, std::span<const Vertex> x) {
  const Graph& g = w.graph();
  std::vector<char> in_x(g.order(), 0);
  for (Vertex v : x) {
    if (v >= g.order()) throw InputError("vertex " + vs(v) + " is not in the wheel");
    in_x[v] = 1;
  }
  SeparatedLayers out;
  for (std::size_t i = 0; i < w.layers().size(); ++i) {
    const auto& layer = w.layer(i);
    for (std::size_t p = 0; p + 1 < layer.size(); ++p) {
      if (in_x[layer[p]] == in_x[layer[p + 1]]) continue;
      out.layers.push_back(i);
      out.sx.push_back(in_x[layer[p]] ? layer[p] : layer[p + 1]);
      out.sy.push_back(in_x[layer[p]] ? layer[p + 1] : layer[p]);
      break;
    }
  }
  const std::size_t s = out.layers.size();
  out.submatrix = GF2Matrix(s, s);
  for (std::size_t r = 0; r < s; ++r)
    for (std::size_t c = 0; c < s; ++c) out.submatrix.set(r, c, g.adjacent(out.sx[r], out.sy[c]));
  out.fuzzy_triangular = is_fuzzy_triangular(out.submatrix);
  out.rank = gf2_rank(out.submatrix);
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inapplicable: return "inapplicable";
  }
  return "?";
}

bool RankwidthAudit::all_applicable_pass() const {
  return std::none_of(steps.begin(), steps.end(), [](const AuditStep& s) { return s.verdict == Verdict::fail; });
}

RankwidthAudit rankwidth_audit(const LayeredWheel& w, const RankDecomposition& rd) {
  const Graph& g = w.graph();
  if (g.order() < 2) throw InputError("rankwidth audit needs at least two vertices");
  RankwidthAudit a;
  auto step = [&](std::string name, bool ok, std::string detail) {
    a.steps.push_back({std::move(name), ok ? Verdict::pass : Verdict::fail, std::move(detail)});
  };
  auto skip = [&](std::string name, std::string detail) {
    a.steps.push_back({std::move(name), Verdict::inapplicable, std::move(detail)});
  };

  const std::size_t r = rank_decomposition_width(g, rd);
  a.width = r;
  step("width", true, "r = " + vs(r));

  const Edge e = find_balanced_edge(rd.tree);
  a.balanced_edge = e;
  const auto [na, nb] = leaf_split(rd.tree, e);
  step("balanced_edge", 3 * na >= g.order() && 3 * nb >= g.order(),
       "edge " + vs(e.first) + "-" + vs(e.second) + " splits " + vs(na) + " | " + vs(nb));

  const auto x = vertices_on_side(rd, e, e.first);
  std::vector<char> in_x(g.order(), 0);
  for (Vertex v : x) in_x[v] = 1;
  const auto sep = separated_layer_witness(w, x);
  const std::size_t cut = cutrank(g, x);
  a.separated_layers = sep.layers.size();
  a.certified_bound = sep.rank;
  step("separated_layers",
       sep.fuzzy_triangular && sep.rank == sep.layers.size() && sep.rank <= cut && cut <= r,
       vs(sep.layers.size()) + " separated layers, witness rank " + vs(sep.rank) + ", cutrank " + vs(cut) +
           ", r " + vs(r));

  const auto uni = uniformity_audit(w);
  a.uniform_m = uni.uniform_m;
  if (uni.uniform_m) {
    a.m_at_least_15 = *uni.uniform_m >= 15;
    a.m_at_least_4l2 = *uni.uniform_m >= 4 * w.l() * w.l();
  }
  const char* domain_steps[] = {"last_layer_separated", "last_layer_components", "long_subpaths",
                                "identity_submatrix"};
  if (!uni.uniform_m || w.l() < 2) {
    for (const char* s : domain_steps) skip(s, uni.uniform_m ? "needs l >= 2" : "wheel is not uniform");
    return a;
  }
  const std::size_t m = *uni.uniform_m;
  const std::size_t l = w.l();
  const auto& last = w.layer(l);

  // Maximal runs of the last layer on each side.
  struct Run {
    std::size_t lo, hi;
    bool in_x;
  };
  std::vector<Run> runs;
  for (std::size_t p = 0; p < last.size(); ++p) {
    const bool side = in_x[last[p]];
    if (!runs.empty() && runs.back().in_x == side)
      runs.back().hi = p;
    else
      runs.push_back({p, p, side});
  }
  std::size_t comps[2] = {0, 0}, longest[2] = {0, 0};
  const Run* best[2] = {nullptr, nullptr};
  for (const auto& run : runs) {
    ++comps[run.in_x];
    if (run.hi - run.lo + 1 > longest[run.in_x]) longest[run.in_x] = run.hi - run.lo + 1, best[run.in_x] = &run;
  }
  step("last_layer_separated", comps[0] > 0 && comps[1] > 0,
       "last layer has " + vs(comps[1]) + " runs in X and " + vs(comps[0]) + " outside");
  step("last_layer_components", comps[0] <= r + 1 && comps[1] <= r + 1,
       vs(comps[1]) + " and " + vs(comps[0]) + " components, limit r+1 = " + vs(r + 1));
  const std::size_t floor_len = 2 * last.size() / (7 * (r + 1));
  step("long_subpaths", longest[0] >= floor_len && longest[1] >= floor_len,
       "longest runs " + vs(longest[1]) + " and " + vs(longest[0]) + ", floor " + vs(floor_len));

  std::optional<std::size_t> j;
  for (std::size_t i = l - 1; i >= 1; --i) {
    if (std::find(sep.layers.begin(), sep.layers.end(), i) == sep.layers.end()) {
      j = i;
      break;
    }
  }
  if (!j) {
    skip("identity_submatrix", "every layer 1..l-1 is separated");
    return a;
  }
  const bool side = in_x[w.layer(*j).front()];
  const Run* target = best[!side];
  if (!target) {
    step("identity_submatrix", false, "no last-layer run on the far side");
    return a;
  }
  std::vector<Vertex> rows, cols;
  for (Vertex v : w.layer(*j)) {
    const Span dom = domain_span(w, v, l - *j);
    const std::size_t lo = std::max(dom.lo, target->lo);
    const std::size_t hi = std::min(dom.hi, target->hi);
    for (std::size_t p = lo; p <= hi && lo <= hi; ++p) {
      if (g.adjacent(v, last[p])) {
        rows.push_back(v);
        cols.push_back(last[p]);
        break;
      }
    }
  }
  GF2Matrix mat(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < cols.size(); ++c) mat.set(i, c, g.adjacent(rows[i], cols[c]));
  const bool identity = mat == GF2Matrix::identity(rows.size());
  std::size_t dom_size = 1;
  for (std::size_t d = 0; d < l - *j; ++d) dom_size *= m;
  const std::size_t expected = (target->hi - target->lo + 1) / dom_size;
  if (identity) a.certified_bound = std::max(a.certified_bound, rows.size());
  step("identity_submatrix", identity && rows.size() <= r && rows.size() >= expected,
       "layer " + vs(*j) + ": " + vs(rows.size()) + "x" + vs(cols.size()) + (identity ? " identity" : " not identity") +
           ", floor(|P_Y| / m^(l-j)) = " + vs(expected));
  return a;
}

}  // namespace lwheel
