#include <algorithm>
#include <set>

#include "doctest.h"
#include "lwheel/audit.hpp"
#include "lwheel/errors.hpp"
#include "lwheel/generate.hpp"
#include "lwheel/wheel.hpp"

using namespace lwheel;

namespace {

LayeredWheel reassemble(const LayeredWheel& w, Graph g, std::vector<std::vector<Vertex>> layers) {
  return LayeredWheel::assemble(w.flavor(), w.l(), w.k(), w.policy(), std::move(g), std::move(layers));
}

// Subdivides the layer edge between positions pos and pos+1 of `layer`.
LayeredWheel lengthen(const LayeredWheel& w, std::size_t layer, std::size_t pos) {
  const Vertex a = w.at(layer, pos);
  const Vertex b = w.at(layer, pos + 1);
  const Vertex x = static_cast<Vertex>(w.graph().order());
  std::vector<Edge> edges;
  for (const auto& e : w.graph().edges())
    if (e != Edge{std::min(a, b), std::max(a, b)}) edges.push_back(e);
  edges.emplace_back(a, x);
  edges.emplace_back(x, b);
  auto layers = w.layers();
  layers[layer].insert(layers[layer].begin() + static_cast<std::ptrdiff_t>(pos + 1), x);
  return reassemble(w, Graph::from_edges(x + 1, edges), std::move(layers));
}

std::vector<LayeredWheel> corpus() {
  std::vector<LayeredWheel> out;
  for (std::size_t l = 0; l <= 3; ++l)
    for (std::size_t k = 4; k <= 6; ++k) {
      out.push_back(generate_ttf(l, k, LengthPolicy::minimal()));
      out.push_back(generate_ttf(l, k, LengthPolicy::special()));
    }
  for (std::size_t l = 1; l <= 3; ++l)
    for (std::size_t k = 4; k <= 5; ++k) {
      out.push_back(generate_ehf(l, k, LengthPolicy::minimal()));
      out.push_back(generate_ehf(l, k, LengthPolicy::minimal(), EhfVariant::pyramid));
    }
  out.push_back(generate_ttf(2, 4, LengthPolicy::uniform(minimal_uniform_m(Flavor::ttf, 2, 4) + 3)));
  out.push_back(generate_ehf(2, 4, LengthPolicy::uniform(minimal_uniform_m(Flavor::ehf, 2, 4) + 2)));
  return out;
}

bool is_mark(const LayeredWheel& w, Vertex v) { return w.info(v).vtype > 0; }

}  // namespace

TEST_CASE("generated wheels pass every axiom and parity check") {
  for (const auto& w : corpus()) {
    CAPTURE(to_string(w.flavor()));
    CAPTURE(w.l());
    CAPTURE(w.k());
    const auto r = validate_axioms(w);
    CHECK(r.clean());
    if (!r.clean()) MESSAGE(r.violations.front().code << ": " << r.violations.front().message);
    if (is_ehf(w.flavor()))
      CHECK(parity_audit(w).clean());
    else
      CHECK_THROWS_AS(parity_audit(w), InputError);
  }
}

TEST_CASE("vertex metadata is consistent with the graph") {
  for (const auto& w : corpus()) {
    const Graph& g = w.graph();
    std::size_t seen = 0;
    for (std::size_t i = 0; i < w.layers().size(); ++i)
      for (std::size_t p = 0; p < w.layer(i).size(); ++p) {
        const Vertex v = w.at(i, p);
        const auto& inf = w.info(v);
        CHECK(inf.layer == i);
        CHECK(inf.pos == p);
        ++seen;
        // ancestors = neighbours on earlier layers
        std::vector<Vertex> earlier;
        for (Vertex x : g.neighbors(v))
          if (w.info(x).layer < i) earlier.push_back(x);
        auto anc = inf.ancestors;
        std::sort(anc.begin(), anc.end());
        CHECK(anc == earlier);
        CHECK(static_cast<std::size_t>(inf.vtype) == anc.size());
        CHECK(inf.vtype <= (is_ehf(w.flavor()) ? 2 : 1));
      }
    CHECK(seen == g.order());
  }
}

TEST_CASE("every vertex has at least 3^(j-i) neighbours on each later layer") {
  for (const auto& w : corpus())
    for (std::size_t i = 0; i < w.layers().size(); ++i)
      for (Vertex v : w.layer(i)) {
        std::size_t need = 1;
        for (std::size_t j = i + 1; j < w.layers().size(); ++j) {
          need *= 3;
          std::size_t have = 0;
          for (Vertex x : w.layer(j)) have += w.graph().adjacent(v, x) ? 1 : 0;
          CHECK(have >= need);
        }
      }
}

TEST_CASE("ttf G_{2,4}: root has nine neighbours in P_2") {
  const auto w = generate_ttf(2, 4, LengthPolicy::minimal());
  std::size_t have = 0;
  for (Vertex x : w.layer(2)) have += w.graph().adjacent(w.root(), x) ? 1 : 0;
  CHECK(have == 9);
}

TEST_CASE("deleting r-r2 breaks the mark count at r") {
  const auto w = generate_ttf(2, 4, LengthPolicy::minimal());
  const Vertex r = w.root();
  const Vertex r2 = w.at(1, 2);
  REQUIRE(w.graph().adjacent(r, r2));
  const auto t = reassemble(w, w.graph().without_edge(r, r2), w.layers());
  const auto rep = validate_axioms(t);
  REQUIRE(rep.has("mark_count"));
  const auto it = std::find_if(rep.violations.begin(), rep.violations.end(),
                               [](const Violation& v) { return v.code == "mark_count"; });
  CHECK(std::find(it->vertices.begin(), it->vertices.end(), r) != it->vertices.end());
}

TEST_CASE("lengthening one ehf gap by one edge breaks its parity") {
  const auto w = generate_ehf(2, 4, LengthPolicy::minimal());
  // A non-mark edge in the middle of P_2.
  std::size_t pos = w.layer(2).size() / 2;
  while (is_mark(w, w.at(2, pos)) || is_mark(w, w.at(2, pos + 1))) ++pos;
  const auto t = lengthen(w, 2, pos);
  const auto rep = validate_axioms(t);
  CHECK(rep.has("gap_parity"));
  for (const auto& v : rep.violations) CHECK(v.code == "gap_parity");
  std::size_t flagged = 0;
  for (const auto& v : rep.violations) {
    REQUIRE(v.span.has_value());
    CHECK(v.span->layer == 2);
    CHECK(v.span->lo <= pos);
    CHECK(pos + 1 <= v.span->hi);
    ++flagged;
  }
  CHECK(flagged == 1);

  // The parity audit flags the box containing the edge and nothing else.
  const auto par = parity_audit(t);
  CHECK_FALSE(par.clean());
  for (const auto& v : par.violations) {
    REQUIRE(v.span.has_value());
    CHECK(v.span->layer == 2);
    CHECK(v.span->lo <= pos);
    CHECK(pos + 1 <= v.span->hi);
  }
}

TEST_CASE("adding a chord to a layer is reported") {
  const auto w = generate_ttf(1, 5, LengthPolicy::minimal());
  const auto t = reassemble(w, w.graph().with_edge(w.at(1, 0), w.at(1, 3)), w.layers());
  CHECK(validate_axioms(t).has("layer_chord"));
}

TEST_CASE("bridges") {
  SUBCASE("ehf pairs on P_1 have odd bridges with a middle edge") {
    const auto w = generate_ehf(2, 4, LengthPolicy::minimal());
    for (std::size_t p = 0; p + 1 < w.layer(1).size(); ++p) {
      const Bridge b = bridge(w, w.at(1, p), w.at(1, p + 1));
      CHECK(b.span.length() % 2 == 1);
      REQUIRE(b.middle_edge.has_value());
      CHECK(w.graph().adjacent(b.middle_edge->first, b.middle_edge->second));
      // middle edge splits the span into two equal halves
      const std::size_t left = w.info(b.middle_edge->first).pos;
      CHECK(left - b.span.lo == b.span.hi - (left + 1));
    }
  }
  SUBCASE("ttf special bridges are odd") {
    for (std::size_t k = 4; k <= 7; ++k) {
      const auto w = generate_ttf(3, k, LengthPolicy::special());
      CHECK(is_special(w));
      for (std::size_t i = 1; i < w.l(); ++i)
        for (std::size_t p = 0; p + 1 < w.layer(i).size(); ++p)
          CHECK(bridge(w, w.at(i, p), w.at(i, p + 1)).middle_edge.has_value());
    }
  }
  SUBCASE("ttf minimal with even bridges has no middle edge") {
    const auto w = generate_ttf(2, 4, LengthPolicy::minimal());
    CHECK_FALSE(is_special(w));
    const Bridge b = bridge(w, w.at(1, 0), w.at(1, 1));
    CHECK(b.span.length() % 2 == 0);
    CHECK_FALSE(b.middle_edge.has_value());
  }
  SUBCASE("bad pairs") {
    const auto w = generate_ttf(2, 5, LengthPolicy::special());
    CHECK_THROWS_AS(bridge(w, w.at(1, 1), w.at(1, 0)), InputError);
    CHECK_THROWS_AS(bridge(w, w.at(1, 0), w.at(1, 2)), InputError);
  }
}

TEST_CASE("domains") {
  const auto w = generate_ttf(2, 5, LengthPolicy::special());
  for (Vertex v = 0; v < w.graph().order(); ++v) CHECK(domain(w, v, 0) == std::vector<Vertex>{v});
  CHECK(domain(w, w.root(), 1) == w.layer(1));
  CHECK(domain(w, w.root(), 2) == w.layer(2));
  CHECK_THROWS_AS(domain(w, w.root(), 3), InputError);
  CHECK_THROWS_AS(domain(generate_ttf(2, 4, LengthPolicy::minimal()), 0, 1), UnsupportedPolicyError);

  const std::size_t m = minimal_uniform_m(Flavor::ttf, 2, 5) + 2;
  const auto u = generate_ttf(2, 5, LengthPolicy::uniform(m));
  CHECK(domain(u, u.root(), 2).size() == m * m);
  for (Vertex v : u.layer(1)) CHECK(domain(u, v, 1).size() == m);

  const std::size_t me = minimal_uniform_m(Flavor::ehf, 2, 4);
  const auto e = generate_ehf(2, 4, LengthPolicy::uniform(me));
  CHECK(domain(e, e.root(), 2).size() == me * me);
  for (Vertex v : e.layer(1)) CHECK(domain(e, v, 1).size() == me);
}

TEST_CASE("domains at equal depth tile the target layer and sit inside scopes") {
  for (const auto& w : corpus()) {
    if (!is_special(w)) continue;
    for (std::size_t i = 0; i < w.layers().size(); ++i)
      for (std::size_t d = 1; i + d < w.layers().size(); ++d) {
        std::vector<Vertex> joined;
        for (Vertex v : w.layer(i)) {
          const auto dom = domain(w, v, d);
          const Span ds = domain_span(w, v, d);
          CHECK(ds.count() == dom.size());
          const Span sc = scope(w, v, d);
          CHECK(sc.lo <= ds.lo);
          CHECK(ds.hi <= sc.hi);
          joined.insert(joined.end(), dom.begin(), dom.end());
        }
        CHECK(joined == w.layer(i + d));
      }
  }
}

TEST_CASE("scopes") {
  const auto t = generate_ttf(2, 4, LengthPolicy::minimal());
  const Span s0 = scope(t, t.at(1, 2), 0);
  CHECK(s0.count() == 1);
  CHECK(s0.lo == 2);
  const Span r1 = scope(t, t.root(), 1);
  CHECK(r1.layer == 1);
  CHECK(r1.lo == 0);
  CHECK(r1.hi + 1 == t.layer(1).size());

  const auto e = generate_ehf(3, 4, LengthPolicy::minimal());
  for (Vertex v : e.layer(2)) {
    REQUIRE(e.box(v).has_value());
    CHECK(scope(e, v, 1) == *e.box(v));
  }
}

TEST_CASE("uniformity audit") {
  CHECK(uniformity_audit(generate_ehf(2, 4, LengthPolicy::minimal())).special);
  CHECK(uniformity_audit(generate_ehf(2, 5, LengthPolicy::minimal(), EhfVariant::pyramid)).special);
  const auto tm = uniformity_audit(generate_ttf(2, 4, LengthPolicy::minimal()));
  CHECK_FALSE(tm.special);
  CHECK_FALSE(tm.uniform_m.has_value());
  const auto tu = uniformity_audit(generate_ttf(2, 4, LengthPolicy::uniform(23)));
  CHECK(tu.special);
  CHECK(tu.uniform_m == 23u);
  CHECK(tu.neighbor_growth_ok);
}
