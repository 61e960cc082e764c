#include "lwheel/detectors.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <set>
#include <unordered_map>

#include "lwheel/errors.hpp"

namespace lwheel {

std::string to_string(Tri t) {
  switch (t) {
    case Tri::no: return "no";
    case Tri::yes: return "yes";
    case Tri::unknown: return "unknown";
  }
  return "?";
}

std::string to_string(PatternKind k) {
  switch (k) {
    case PatternKind::hole: return "hole";
    case PatternKind::theta: return "theta";
    case PatternKind::pyramid: return "pyramid";
    case PatternKind::prism: return "prism";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

class Guard {
 public:
  explicit Guard(const Budget& b) : budget_(b), start_(Clock::now()) {}

  bool tick() {
    if (exhausted_) return false;
    if (++nodes_ > budget_.max_nodes_expanded) return exhaust();
    if (budget_.deadline && (nodes_ & 1023U) == 0 && Clock::now() - start_ > *budget_.deadline) return exhaust();
    return true;
  }
  bool exhaust() {
    exhausted_ = true;
    return false;
  }
  bool exhausted() const { return exhausted_; }
  std::size_t nodes() const { return nodes_; }

 private:
  Budget budget_;
  Clock::time_point start_;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
};

// Calls visit(cycle) once per hole, from its smallest vertex, in the
// direction whose second vertex is smaller than its last. Returns false if
// the guard ran out or visit asked to stop.
template <typename Visit>
bool for_each_hole(const Graph& g, std::optional<std::size_t> max_len, Guard& guard, Visit&& visit) {
  const std::size_t n = g.order();
  std::vector<std::uint32_t> cnt(n, 0);  // path vertices other than the start adjacent to v
  std::vector<char> on(n, 0);
  std::vector<char> adj_s(n, 0);
  std::vector<Vertex> path;
  std::vector<std::size_t> iter;

  auto push = [&](Vertex x) {
    path.push_back(x);
    iter.push_back(0);
    on[x] = 1;
    for (Vertex y : g.neighbors(x)) ++cnt[y];
  };
  auto pop = [&]() {
    const Vertex x = path.back();
    path.pop_back();
    iter.pop_back();
    on[x] = 0;
    for (Vertex y : g.neighbors(x)) --cnt[y];
  };

  for (Vertex s = 0; s < n; ++s) {
    for (Vertex x : g.neighbors(s)) adj_s[x] = 1;
    path.assign(1, s);
    iter.assign(1, 0);
    on[s] = 1;
    bool stop = false;
    for (Vertex p1 : g.neighbors(s)) {
      if (p1 <= s) continue;
      if (max_len && *max_len < 4) break;
      push(p1);
      while (path.size() > 1 && !stop) {
        const Vertex top = path.back();
        const auto nbrs = g.neighbors(top);
        if (iter.back() == nbrs.size()) {
          pop();
          continue;
        }
        const Vertex x = nbrs[iter.back()++];
        if (x <= s || on[x] || cnt[x] != 1) continue;
        const std::size_t t = path.size() - 1;  // edges on the path so far
        if (adj_s[x]) {
          if (t >= 2 && path[1] < x && (!max_len || t + 2 <= *max_len)) {
            if (!guard.tick()) {
              stop = true;
              break;
            }
            path.push_back(x);
            const bool go_on = visit(std::span<const Vertex>(path));
            path.pop_back();
            if (!go_on) stop = true;
          }
          continue;
        }
        if (max_len && t + 3 > *max_len) continue;
        if (!guard.tick()) {
          stop = true;
          break;
        }
        push(x);
      }
      while (path.size() > 1) pop();
      if (stop) break;
    }
    on[s] = 0;
    for (Vertex x : g.neighbors(s)) adj_s[x] = 0;
    if (stop) return false;
  }
  return true;
}

Witness hole_witness(std::span<const Vertex> cyc) {
  Witness w;
  w.kind = PatternKind::hole;
  w.roles["cycle"] = std::vector<Vertex>(cyc.begin(), cyc.end());
  w.vertices = w.roles["cycle"];
  std::sort(w.vertices.begin(), w.vertices.end());
  return w;
}

Witness finish(PatternKind kind, std::map<std::string, std::vector<Vertex>> roles) {
  Witness w;
  w.kind = kind;
  std::set<Vertex> all;
  for (const auto& [name, vs] : roles) all.insert(vs.begin(), vs.end());
  w.vertices.assign(all.begin(), all.end());
  w.roles = std::move(roles);
  return w;
}

// Attachments of every vertex to one hole H, and components of the vertices
// with no neighbour on H ("free" vertices), computed lazily.
class HoleScan {
 public:
  explicit HoleScan(const Graph& g)
      : g_(g), hpos_(g.order(), -1), natt_(g.order(), 0), att_(g.order()), comp_(g.order(), 0), seen_(g.order(), 0) {}

  void load(std::span<const Vertex> cyc) {
    cyc_ = cyc;
    len_ = cyc.size();
    for (std::size_t i = 0; i < len_; ++i) hpos_[cyc[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < len_; ++i) {
      for (Vertex y : g_.neighbors(cyc[i])) {
        if (hpos_[y] >= 0) continue;
        if (natt_[y] == 0) touched_.push_back(y);
        if (natt_[y] < 3) att_[y][natt_[y]] = i;
        if (natt_[y] < 4) ++natt_[y];
      }
    }
    ++stamp_;
  }

  void clear() {
    for (Vertex v : cyc_) hpos_[v] = -1;
    for (Vertex y : touched_) natt_[y] = 0;
    touched_.clear();
  }

  const std::vector<Vertex>& touched() const { return touched_; }
  std::span<const Vertex> graph_neighbors(Vertex v) const { return g_.neighbors(v); }
  int natt(Vertex y) const { return natt_[y]; }
  std::size_t anchor(Vertex y, int j) const { return att_[y][j]; }
  std::size_t len() const { return len_; }
  Vertex at(std::size_t p) const { return cyc_[p % len_]; }
  bool on_hole(Vertex v) const { return hpos_[v] >= 0; }
  bool is_free(Vertex v) const { return hpos_[v] < 0 && natt_[v] == 0; }
  bool hadj(std::size_t a, std::size_t b) const { return (a + 1) % len_ == b || (b + 1) % len_ == a; }

  // Lower position of a hole edge given its two end positions.
  std::size_t edge_lo(std::size_t a, std::size_t b) const { return (a + 1) % len_ == b ? a : b; }

  std::uint32_t component(Vertex f) {
    if (seen_[f] == stamp_) return comp_[f];
    const std::uint32_t id = f;
    std::vector<Vertex> queue{f};
    seen_[f] = stamp_;
    comp_[f] = id;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      for (Vertex y : g_.neighbors(queue[h])) {
        if (seen_[y] == stamp_ || !is_free(y)) continue;
        seen_[y] = stamp_;
        comp_[y] = id;
        queue.push_back(y);
      }
    }
    return id;
  }

  // Shortest src..dst path whose interior is free.
  std::vector<Vertex> connect(Vertex src, Vertex dst) const {
    std::unordered_map<Vertex, Vertex> parent{{src, src}};
    std::deque<Vertex> queue{src};
    while (!queue.empty()) {
      const Vertex x = queue.front();
      queue.pop_front();
      if (x == dst) break;
      for (Vertex y : g_.neighbors(x)) {
        if (parent.count(y) || (y != dst && !is_free(y))) continue;
        parent[y] = x;
        queue.push_back(y);
      }
    }
    std::vector<Vertex> out;
    if (!parent.count(dst)) return out;
    for (Vertex x = dst;; x = parent[x]) {
      out.push_back(x);
      if (x == src) break;
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  // Hole vertices from position `from` to `to`, stepping by dir (+1 or -1).
  std::vector<Vertex> arc(std::size_t from, std::size_t to, int dir) const {
    std::vector<Vertex> out;
    std::size_t p = from % len_;
    to %= len_;
    while (true) {
      out.push_back(cyc_[p]);
      if (p == to) break;
      p = dir > 0 ? (p + 1) % len_ : (p + len_ - 1) % len_;
    }
    return out;
  }

 private:
  const Graph& g_;
  std::span<const Vertex> cyc_;
  std::size_t len_ = 0;
  std::vector<int> hpos_;
  std::vector<std::uint8_t> natt_;
  std::vector<std::array<std::size_t, 3>> att_;
  std::vector<Vertex> touched_;
  std::vector<std::uint32_t> comp_;
  std::vector<std::uint32_t> seen_;
  std::uint32_t stamp_ = 0;
};

template <typename T>
std::vector<Vertex> concat(std::vector<Vertex> a, const T& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::optional<Witness> theta_on_hole(HoleScan& h) {
  auto build = [&](std::size_t pa, std::size_t pb, const std::vector<Vertex>& connector) {
    return finish(PatternKind::theta, {{"ends", {h.at(pa), h.at(pb)}},
                                       {"path1", h.arc(pa, pb, +1)},
                                       {"path2", h.arc(pa, pb, -1)},
                                       {"path3", concat(concat({h.at(pa)}, connector), std::vector<Vertex>{h.at(pb)})}});
  };
  for (Vertex y : h.touched())
    if (h.natt(y) == 2 && !h.hadj(h.anchor(y, 0), h.anchor(y, 1))) return build(h.anchor(y, 0), h.anchor(y, 1), {y});

  // Ports: exactly one neighbour on H. Two ports with distinct non-adjacent
  // anchors, joined directly or through free vertices, close a third path.
  std::unordered_map<std::uint32_t, std::vector<Vertex>> by_comp;
  auto compatible = [&](Vertex a, Vertex b) {
    const std::size_t pa = h.anchor(a, 0);
    const std::size_t pb = h.anchor(b, 0);
    return pa != pb && !h.hadj(pa, pb);
  };
  for (Vertex y : h.touched()) {
    if (h.natt(y) != 1) continue;
    for (Vertex x : h.graph_neighbors(y)) {
      if (h.on_hole(x)) continue;
      if (h.natt(x) == 1 && y < x && compatible(y, x)) return build(h.anchor(y, 0), h.anchor(x, 0), {y, x});
      if (!h.is_free(x)) continue;
      auto& list = by_comp[h.component(x)];
      if (std::find(list.begin(), list.end(), y) != list.end()) continue;
      for (Vertex z : list)
        if (compatible(z, y)) return build(h.anchor(z, 0), h.anchor(y, 0), h.connect(z, y));
      if (list.size() < 3) list.push_back(y);
    }
  }
  return std::nullopt;
}

// Tri-attacher: exactly two neighbours on H, and they are adjacent on H.
bool tri_attacher(const HoleScan& h, Vertex y) { return h.natt(y) == 2 && h.hadj(h.anchor(y, 0), h.anchor(y, 1)); }

std::optional<Witness> pyramid_on_hole(HoleScan& h) {
  // apex at position pa, triangle on hole edge (p, p+1) plus b3, third path
  // from the apex ending at b3.
  auto build = [&](std::size_t pa, std::size_t p, std::vector<Vertex> third) {
    const Vertex b3 = third.back();
    return finish(PatternKind::pyramid, {{"apex", {h.at(pa)}},
                                         {"triangle", {h.at(p), h.at(p + 1), b3}},
                                         {"path1", h.arc(pa, p, +1)},
                                         {"path2", h.arc(pa, p + 1, -1)},
                                         {"path3", std::move(third)}});
  };
  for (Vertex y : h.touched()) {
    if (h.natt(y) != 3) continue;
    for (int j = 0; j < 3; ++j) {
      const std::size_t a = h.anchor(y, j);
      const std::size_t b1 = h.anchor(y, (j + 1) % 3);
      const std::size_t b2 = h.anchor(y, (j + 2) % 3);
      if (h.hadj(b1, b2) && !h.hadj(a, b1) && !h.hadj(a, b2)) return build(a, h.edge_lo(b1, b2), {h.at(a), y});
    }
  }
  auto compatible = [&](Vertex tri, Vertex port) {
    const std::size_t a = h.anchor(port, 0);
    return a != h.anchor(tri, 0) && a != h.anchor(tri, 1);
  };
  auto make = [&](Vertex tri, Vertex port, const std::vector<Vertex>& tri_to_port) {
    std::vector<Vertex> third{h.at(h.anchor(port, 0))};
    third.insert(third.end(), tri_to_port.rbegin(), tri_to_port.rend());
    return build(h.anchor(port, 0), h.edge_lo(h.anchor(tri, 0), h.anchor(tri, 1)), third);
  };
  struct Lists {
    std::vector<Vertex> tris;
    std::vector<Vertex> ports;
  };
  std::unordered_map<std::uint32_t, Lists> by_comp;
  for (Vertex y : h.touched()) {
    const bool tri = tri_attacher(h, y);
    if (!tri && h.natt(y) != 1) continue;
    for (Vertex x : h.graph_neighbors(y)) {
      if (h.on_hole(x)) continue;
      if (tri && h.natt(x) == 1 && compatible(y, x)) return make(y, x, {y, x});
      if (!h.is_free(x)) continue;
      auto& lists = by_comp[h.component(x)];
      auto& mine = tri ? lists.tris : lists.ports;
      if (std::find(mine.begin(), mine.end(), y) != mine.end()) continue;
      if (tri) {
        for (Vertex p : lists.ports)
          if (compatible(y, p)) return make(y, p, h.connect(y, p));
      } else {
        for (Vertex t : lists.tris)
          if (compatible(t, y)) return make(t, y, h.connect(t, y));
      }
      if (mine.size() < 3) mine.push_back(y);
    }
  }
  return std::nullopt;
}

std::optional<Witness> prism_on_hole(HoleScan& h) {
  auto disjoint = [&](Vertex a, Vertex b) {
    const std::size_t a0 = h.anchor(a, 0), a1 = h.anchor(a, 1);
    const std::size_t b0 = h.anchor(b, 0), b1 = h.anchor(b, 1);
    return a0 != b0 && a0 != b1 && a1 != b0 && a1 != b1;
  };
  auto make = [&](Vertex y1, Vertex y2, std::vector<Vertex> third) {
    const std::size_t p = h.edge_lo(h.anchor(y1, 0), h.anchor(y1, 1));
    const std::size_t q = h.edge_lo(h.anchor(y2, 0), h.anchor(y2, 1));
    return finish(PatternKind::prism, {{"triangle_a", {h.at(p), h.at(p + 1), y1}},
                                       {"triangle_b", {h.at(q + 1), h.at(q), y2}},
                                       {"path1", h.arc(p, q + 1, -1)},
                                       {"path2", h.arc(p + 1, q, +1)},
                                       {"path3", std::move(third)}});
  };
  std::unordered_map<std::uint32_t, std::vector<Vertex>> by_comp;
  for (Vertex y : h.touched()) {
    if (!tri_attacher(h, y)) continue;
    for (Vertex x : h.graph_neighbors(y)) {
      if (h.on_hole(x)) continue;
      if (y < x && tri_attacher(h, x) && disjoint(y, x)) return make(y, x, {y, x});
      if (!h.is_free(x)) continue;
      auto& list = by_comp[h.component(x)];
      if (std::find(list.begin(), list.end(), y) != list.end()) continue;
      for (Vertex z : list)
        if (disjoint(z, y)) return make(z, y, h.connect(z, y));
      if (list.size() < 3) list.push_back(y);
    }
  }
  return std::nullopt;
}

bool has_triangle(const Graph& g) {
  for (Vertex u = 0; u < g.order(); ++u)
    for (Vertex v : g.neighbors(u))
      if (v > u)
        for (Vertex w : g.neighbors(v))
          if (w > v && g.adjacent(u, w)) return true;
  return false;
}

template <typename OnHole>
PatternReport search(const Graph& g, const Budget& b, OnHole on_hole) {
  PatternReport rep;
  Guard guard(b);
  HoleScan scan(g);
  const bool finished = for_each_hole(g, std::nullopt, guard, [&](std::span<const Vertex> cyc) {
    scan.load(cyc);
    auto found = on_hole(scan);
    scan.clear();
    if (!found) return true;
    rep.witness = std::move(found);
    return false;
  });
  rep.complete = finished || rep.witness.has_value();
  rep.nodes_expanded = guard.nodes();
  if (rep.witness && !validate_witness(g, *rep.witness))
    throw IntegrityError(to_string(rep.witness->kind) + " witness failed re-validation");
  return rep;
}

// --- witness validation -----------------------------------------------------

using EdgeSet = std::set<Edge>;

void add_edge(EdgeSet& s, Vertex a, Vertex b) { s.insert(a < b ? Edge{a, b} : Edge{b, a}); }

bool induced_matches(const Graph& g, const std::vector<Vertex>& vertices, const EdgeSet& expected) {
  for (Vertex v : vertices)
    if (v >= g.order()) return false;
  std::size_t count = 0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      const Vertex a = std::min(vertices[i], vertices[j]);
      const Vertex b = std::max(vertices[i], vertices[j]);
      const bool edge = g.adjacent(a, b);
      if (edge != (expected.count({a, b}) > 0)) return false;
      count += edge;
    }
  }
  return count == expected.size();
}

bool distinct(std::vector<Vertex> vs) {
  std::sort(vs.begin(), vs.end());
  return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
}

const std::vector<Vertex>* role(const Witness& w, const std::string& name) {
  auto it = w.roles.find(name);
  return it == w.roles.end() ? nullptr : &it->second;
}

std::vector<Vertex> sorted_union(const Witness& w) {
  std::set<Vertex> all;
  for (const auto& [name, vs] : w.roles) all.insert(vs.begin(), vs.end());
  return {all.begin(), all.end()};
}

bool paths_ok(const Witness& w, std::array<const std::vector<Vertex>*, 3>& paths, EdgeSet& edges) {
  for (int i = 0; i < 3; ++i) {
    paths[i] = role(w, "path" + std::to_string(i + 1));
    if (!paths[i] || paths[i]->empty() || !distinct(*paths[i])) return false;
    for (std::size_t j = 0; j + 1 < paths[i]->size(); ++j) add_edge(edges, (*paths[i])[j], (*paths[i])[j + 1]);
  }
  return true;
}

}  // namespace

bool validate_witness(const Graph& g, const Witness& w) {
  if (!distinct(w.vertices) || w.vertices != sorted_union(w)) return false;
  EdgeSet edges;
  switch (w.kind) {
    case PatternKind::hole: {
      const auto* cyc = role(w, "cycle");
      if (!cyc || cyc->size() < 4 || !distinct(*cyc)) return false;
      for (std::size_t i = 0; i < cyc->size(); ++i) add_edge(edges, (*cyc)[i], (*cyc)[(i + 1) % cyc->size()]);
      return induced_matches(g, w.vertices, edges);
    }
    case PatternKind::theta: {
      const auto* ends = role(w, "ends");
      std::array<const std::vector<Vertex>*, 3> paths{};
      if (!ends || ends->size() != 2 || (*ends)[0] == (*ends)[1] || !paths_ok(w, paths, edges)) return false;
      std::vector<Vertex> inner;
      for (const auto* p : paths) {
        if (p->size() < 3 || p->front() != (*ends)[0] || p->back() != (*ends)[1]) return false;
        inner.insert(inner.end(), p->begin() + 1, p->end() - 1);
      }
      return distinct(inner) && induced_matches(g, w.vertices, edges);
    }
    case PatternKind::pyramid: {
      const auto* apex = role(w, "apex");
      const auto* tri = role(w, "triangle");
      std::array<const std::vector<Vertex>*, 3> paths{};
      if (!apex || apex->size() != 1 || !tri || tri->size() != 3 || !paths_ok(w, paths, edges)) return false;
      std::vector<Vertex> rest;
      int short_paths = 0;
      for (int i = 0; i < 3; ++i) {
        const auto* p = paths[i];
        if (p->size() < 2 || p->front() != (*apex)[0] || p->back() != (*tri)[i]) return false;
        short_paths += p->size() == 2;
        rest.insert(rest.end(), p->begin() + 1, p->end());
      }
      if (short_paths > 1 || !distinct(rest)) return false;
      add_edge(edges, (*tri)[0], (*tri)[1]);
      add_edge(edges, (*tri)[1], (*tri)[2]);
      add_edge(edges, (*tri)[0], (*tri)[2]);
      return induced_matches(g, w.vertices, edges);
    }
    case PatternKind::prism: {
      const auto* ta = role(w, "triangle_a");
      const auto* tb = role(w, "triangle_b");
      std::array<const std::vector<Vertex>*, 3> paths{};
      if (!ta || !tb || ta->size() != 3 || tb->size() != 3 || !paths_ok(w, paths, edges)) return false;
      std::vector<Vertex> all;
      for (int i = 0; i < 3; ++i) {
        const auto* p = paths[i];
        if (p->size() < 2 || p->front() != (*ta)[i] || p->back() != (*tb)[i]) return false;
        all.insert(all.end(), p->begin(), p->end());
      }
      if (!distinct(all)) return false;
      for (const auto* t : {ta, tb}) {
        add_edge(edges, (*t)[0], (*t)[1]);
        add_edge(edges, (*t)[1], (*t)[2]);
        add_edge(edges, (*t)[0], (*t)[2]);
      }
      return induced_matches(g, w.vertices, edges);
    }
  }
  return false;
}

HoleReport enumerate_holes(const Graph& g, const HoleQuery& query, const Budget& b) {
  HoleReport rep;
  Guard guard(b);
  bool stopped_by_query = false;
  bool even_kept = false;
  const bool finished = for_each_hole(g, query.max_len, guard, [&](std::span<const Vertex> cyc) {
    ++rep.holes_found;
    const bool even = cyc.size() % 2 == 0;
    if (!rep.min_hole_len || cyc.size() < *rep.min_hole_len) rep.min_hole_len = cyc.size();
    if (rep.holes.size() < query.keep) {
      rep.holes.push_back(hole_witness(cyc));
      even_kept = even_kept || even;
    } else if (even && !even_kept) {
      rep.holes.push_back(hole_witness(cyc));
      even_kept = true;
    }
    if (even) rep.has_even_hole = Tri::yes;
    if (even && query.stop_at_even) {
      stopped_by_query = true;
      return false;
    }
    if (rep.holes_found >= b.max_results) {
      guard.exhaust();
      return false;
    }
    return true;
  });
  rep.complete = finished;
  if (rep.has_even_hole != Tri::yes) rep.has_even_hole = finished ? Tri::no : Tri::unknown;
  (void)stopped_by_query;
  rep.nodes_expanded = guard.nodes();
  return rep;
}

PatternReport find_theta(const Graph& g, const Budget& b) { return search(g, b, theta_on_hole); }

PatternReport find_pyramid(const Graph& g, const Budget& b) {
  if (!has_triangle(g)) return PatternReport{std::nullopt, true, 0};
  return search(g, b, pyramid_on_hole);
}

PatternReport find_prism(const Graph& g, const Budget& b) {
  if (!has_triangle(g)) return PatternReport{std::nullopt, true, 0};
  return search(g, b, prism_on_hole);
}

Witness pyramid_witness_in_variant(const LayeredWheel& w) {
  if (w.flavor() != Flavor::ehf_pyramid) throw InputError("pyramid witness needs the pyramid-variant ehf wheel");
  if (w.l() < 3) throw InputError("pyramid witness needs l >= 3");
  const std::size_t top = w.l() - 1;
  if (!w.layer_matches_pattern(w.l())) throw IntegrityError("last layer does not follow the zone pattern");
  const Graph& g = w.graph();
  const auto& zones = w.zones();
  const auto& layer = w.layer(top);
  const auto& last = w.layer(w.l());

  for (std::size_t p = 0; p < layer.size(); ++p) {
    const Vertex u = layer[p];
    const auto& info = w.info(u);
    if (info.vtype != 2) continue;
    const Vertex v = info.ancestors[0];
    const Vertex x = info.ancestors[1];
    if (w.info(v).layer == w.info(x).layer) continue;
    const auto& bz = w.box_zones(u);
    for (int dir : {+1, -1}) {
      // u*: next mark beyond u on P_{l-1} in this direction, a common vx-neighbour.
      std::optional<std::size_t> star;
      for (std::size_t q = p + dir; q < layer.size(); q += dir) {
        if (w.info(layer[q]).vtype == 0) continue;
        if (w.info(layer[q]).ancestors == info.ancestors) star = q;
        break;
      }
      if (!star) continue;
      const std::size_t pu2 = p + dir;  // u''
      const Vertex u2 = layer[pu2];
      // Shared zone with u'' and the vx-zone of Box_u nearest to it.
      const Zone& shared = zones[dir > 0 ? bz.back() : bz.front()];
      std::optional<std::size_t> near;
      for (std::size_t j = 0; j < bz.size(); ++j) {
        const Zone& z = zones[bz[j]];
        if (z.kind != ZoneKind::E || z.owners != info.ancestors) continue;
        if (!near || dir > 0) near = j;
      }
      if (!near || (dir > 0 ? bz.back() : bz.front()) == bz[*near]) continue;
      const Zone& vx = zones[bz[*near]];
      const std::size_t ps = dir > 0 ? vx.span.hi : vx.span.lo;
      const std::size_t pt = dir > 0 ? shared.span.lo : shared.span.hi;
      std::vector<Vertex> along_last{v};
      for (std::size_t q = ps;; q += dir) {
        along_last.push_back(last[q]);
        if (q == pt) break;
      }
      std::vector<Vertex> along_top{v};
      for (std::size_t q = *star;; q -= dir) {
        along_top.push_back(layer[q]);
        if (q == pu2) break;
      }
      const Vertex t = last[pt];
      Witness wit = finish(PatternKind::pyramid, {{"apex", {v}},
                                                 {"triangle", {u, t, u2}},
                                                 {"path1", {v, u}},
                                                 {"path2", along_last},
                                                 {"path3", along_top}});
      if (validate_witness(g, wit)) return wit;
    }
  }
  throw IntegrityError("no type-2 vertex of the second-to-last layer yields a pyramid");
}

}  // namespace lwheel
