#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "lwheel/errors.hpp"
#include "lwheel/generate.hpp"
#include "lwheel/width.hpp"
#include "oracles.hpp"

using namespace lwheel;

namespace {

Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i) e.emplace_back(i, static_cast<Vertex>((i + 1) % n));
  return Graph::from_edges(n, e);
}

RankDecomposition from_oracle_tree(std::size_t n, const std::vector<Edge>& t) {
  RankDecomposition rd{CubicTree{t.size() + 1, t}, {}};
  for (Vertex v = 0; v < n; ++v) rd.leaf_of.push_back(v);
  return rd;
}

std::size_t library_rankwidth(const Graph& g) {
  std::size_t best = g.order();
  for (const auto& t : oracle::labelled_cubic_trees(g.order()))
    best = std::min(best, rank_decomposition_width(g, from_oracle_tree(g.order(), t)));
  return best;
}

std::size_t oracle_rankwidth(const Graph& g) {
  std::size_t best = g.order();
  for (const auto& t : oracle::labelled_cubic_trees(g.order())) best = std::min(best, oracle::tree_width(g, t));
  return best;
}

std::vector<Vertex> iota_order(std::size_t n) {
  std::vector<Vertex> o(n);
  std::iota(o.begin(), o.end(), 0);
  return o;
}

}  // namespace

TEST_CASE("minor certificates") {
  const auto w = generate_ttf(2, 4, LengthPolicy::minimal());
  const auto mc = minor_certificate(w);
  CHECK(mc.branch_sets.size() == 3);
  CHECK_FALSE(check_minor(w.graph(), mc).has_value());

  const auto w0 = generate_ttf(0, 4, LengthPolicy::minimal());
  CHECK(minor_certificate(w0).branch_sets.size() == 1);

  Graph cut = w.graph();
  for (Vertex x : w.layer(2))
    if (cut.adjacent(w.root(), x)) cut = cut.without_edge(w.root(), x);
  const auto t = LayeredWheel::assemble(w.flavor(), w.l(), w.k(), w.policy(), cut, w.layers());
  CHECK_THROWS_AS(minor_certificate(t), IntegrityError);

  MinorCertificate k2{{{0}, {1, 2}}};
  CHECK_FALSE(check_minor(cycle(6), k2).has_value());
  MinorCertificate disconnected{{{0, 3}, {1}}};
  CHECK(check_minor(cycle(6), disconnected).has_value());
  MinorCertificate overlapping{{{0, 1}, {1, 2}}};
  CHECK(check_minor(cycle(6), overlapping).has_value());
  MinorCertificate unjoined{{{0}, {3}}};
  CHECK(check_minor(cycle(6), unjoined).has_value());
  MinorCertificate good{{{0, 1}, {2, 3}, {4, 5}}};
  CHECK_FALSE(check_minor(cycle(6), good).has_value());
}

TEST_CASE("interval model") {
  const auto w = generate_ttf(2, 4, LengthPolicy::minimal());
  const auto model = interval_model(w);
  const auto& last = w.layer(2);
  const Span right = model[last.back()];
  CHECK(right.count() == 1);
  CHECK(right.lo == last.size() - 1);
  for (std::size_t p = 0; p + 1 < last.size(); ++p) {
    CHECK(model[last[p]].lo == p);
    CHECK(model[last[p]].hi == p + 1);
  }
  CHECK(model[w.root()].lo == 0);
  CHECK(model[w.root()].hi == last.size() - 1);
  CHECK_FALSE(interval_embedding_failure(w, model).has_value());

  auto broken = model;
  broken[w.root()] = Span{2, last.size() - 1, last.size() - 1};
  CHECK(interval_embedding_failure(w, broken).has_value());
}

TEST_CASE("path decompositions") {
  const auto w = generate_ttf(2, 4, LengthPolicy::minimal());
  const auto pd = path_decomposition(w);
  CHECK(pd.width >= 2);
  CHECK(pd.width <= 4);
  CHECK(oracle::valid_path_decomposition(w.graph(), pd.pd.bags));
  CHECK(pd.width + 1 == pd.max_coverage);

  for (std::size_t k = 4; k <= 6; ++k) {
    CHECK(path_decomposition(generate_ttf(1, k, LengthPolicy::minimal())).width <= 2);
    CHECK(path_decomposition(generate_ehf(1, k, LengthPolicy::minimal())).width <= 2);
  }
  const auto p0 = path_decomposition(generate_ttf(0, 4, LengthPolicy::minimal()));
  CHECK(p0.pd.bags.size() == 1);
  CHECK(p0.width == 0);

  for (std::size_t l = 1; l <= 3; ++l) {
    const auto e = generate_ehf(l, 4, LengthPolicy::minimal());
    const auto r = path_decomposition(e);
    CHECK(r.width <= 2 * l);
    CHECK(r.width >= l);
    CHECK(oracle::valid_path_decomposition(e.graph(), r.pd.bags));
  }
}

TEST_CASE("path decomposition checker") {
  const Graph g = cycle(4);
  PathDecomposition ok{{{0, 1, 3}, {1, 2, 3}}};
  CHECK_FALSE(check_path_decomposition(g, ok).has_value());
  CHECK(ok.width() == 2);
  PathDecomposition missing_edge{{{0, 1}, {1, 2, 3}}};
  CHECK(check_path_decomposition(g, missing_edge).has_value());
  PathDecomposition gap{{{0, 1, 3}, {1, 2}, {2, 3}}};
  CHECK(check_path_decomposition(g, gap).has_value());
  PathDecomposition missing_vertex{{{0, 1}}};
  CHECK(check_path_decomposition(g, missing_vertex).has_value());
  CHECK(PathDecomposition{}.width() == 0);
}

TEST_CASE("rank decomposition width examples") {
  const Graph edge = Graph::from_edges(2, std::vector<Edge>{{0, 1}});
  RankDecomposition two{CubicTree{2, {{0, 1}}}, {0, 1}};
  CHECK(rank_decomposition_width(edge, two) == 1);

  const auto order = iota_order(4);
  const auto cat = caterpillar_decomposition(order, 4);
  CHECK(rank_decomposition_width(cycle(4), cat) == 2);
  CHECK(library_rankwidth(cycle(4)) == 1);
  CHECK(oracle_rankwidth(cycle(4)) == 1);
  CHECK(library_rankwidth(cycle(5)) == 2);

  CHECK(rank_decomposition_width(Graph::from_edges(1, std::vector<Edge>{}), RankDecomposition{}) == 0);
  CHECK(rank_decomposition_width(Graph{}, RankDecomposition{}) == 0);

  RankDecomposition wrong_leaves{CubicTree{2, {{0, 1}}}, {0, 0}};
  CHECK_THROWS_AS(rank_decomposition_width(edge, wrong_leaves), InputError);
  RankDecomposition not_cubic{CubicTree{3, {{0, 1}, {1, 2}}}, {0, 2}};
  CHECK_THROWS_AS(rank_decomposition_width(edge, not_cubic), InputError);
}

TEST_CASE("rank width matches the all-trees oracle on graphs with 6 vertices") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 60; ++t) {
    const Graph g = oracle::random_graph(rng, 6, std::uniform_real_distribution<double>(0.2, 0.8)(rng));
    CHECK(library_rankwidth(g) == oracle_rankwidth(g));
  }
}

TEST_CASE("heuristic decompositions are valid and consistent with side queries") {
  std::mt19937_64 rng(31);
  for (std::size_t n : {2u, 3u, 4u, 7u, 16u, 33u}) {
    const Graph g = oracle::random_graph(rng, n, 0.4);
    auto order = iota_order(n);
    std::shuffle(order.begin(), order.end(), rng);
    for (const auto& rd : {caterpillar_decomposition(order, n), bisection_decomposition(order, n)}) {
      CHECK_NOTHROW(check_rank_decomposition(g, rd));
      std::size_t width = 0;
      for (const auto& e : rd.tree.edges) {
        const auto x = vertices_on_side(rd, e, e.first);
        const auto y = vertices_on_side(rd, e, e.second);
        CHECK(x.size() + y.size() == n);
        std::vector<bool> in_x(n, false);
        for (Vertex v : x) in_x[v] = true;
        width = std::max(width, oracle::cutrank(g, in_x));
      }
      CHECK(rank_decomposition_width(g, rd) == width);
    }
  }
}

TEST_CASE("balanced edges") {
  CubicTree two{2, {{0, 1}}};
  const Edge e2 = find_balanced_edge(two);
  CHECK(std::min(e2.first, e2.second) == 0);
  CHECK(std::max(e2.first, e2.second) == 1);

  CubicTree star{4, {{0, 3}, {1, 3}, {2, 3}}};
  const Edge es = find_balanced_edge(star);
  const auto [a, b] = leaf_split(star, es);
  CHECK(std::min(a, b) >= 1);
  for (const auto& e : star.edges) {
    const auto s = leaf_split(star, e);
    CHECK(s.first + s.second == 3);
  }

  std::mt19937_64 rng(37);
  for (int t = 0; t < 200; ++t) {
    auto [nodes, edges] = oracle::random_cubic_tree(rng, 200);
    CubicTree tree{nodes, edges};
    const Edge e = find_balanced_edge(tree);
    const auto [x, y] = oracle::leaf_split(nodes, edges, e);
    CHECK(3 * x >= 200);
    CHECK(3 * y >= 200);
    CHECK(leaf_split(tree, e) == std::pair<std::size_t, std::size_t>{x, y});
  }

  CubicTree path3{3, {{0, 1}, {1, 2}}};
  CHECK_THROWS_AS(find_balanced_edge(path3), InputError);
  CubicTree single{1, {}};
  CHECK_THROWS_AS(check_cubic_tree(single), InputError);
}

TEST_CASE("separated layer witness") {
  const auto w = generate_ttf(2, 4, LengthPolicy::minimal());
  std::vector<Vertex> all(w.graph().order());
  std::iota(all.begin(), all.end(), 0);
  const auto none = separated_layer_witness(w, all);
  CHECK(none.layers.empty());
  CHECK(none.rank == 0);

  std::vector<Vertex> left;
  for (const auto& layer : w.layers())
    for (std::size_t p = 0; p < layer.size() / 2; ++p) left.push_back(layer[p]);
  const auto s = separated_layer_witness(w, left);
  CHECK(s.layers == std::vector<std::size_t>{1, 2});
  CHECK(s.rank == 2);
  oracle::BitRows rows(2, std::vector<bool>(2));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) rows[i][j] = w.graph().adjacent(s.sx[i], s.sy[j]);
  CHECK(oracle::rank_gf2(rows) == 2);
  CHECK(s.fuzzy_triangular);

  std::mt19937_64 rng(41);
  std::bernoulli_distribution coin(0.5);
  for (int t = 0; t < 50; ++t) {
    std::vector<Vertex> x;
    std::vector<bool> in_x(w.graph().order(), false);
    for (Vertex v = 0; v < w.graph().order(); ++v)
      if (coin(rng)) {
        x.push_back(v);
        in_x[v] = true;
      }
    const auto r = separated_layer_witness(w, x);
    CHECK(r.rank <= oracle::cutrank(w.graph(), in_x));
    CHECK(r.rank == r.layers.size());
  }
}

TEST_CASE("rankwidth audit") {
  const std::size_t m = minimal_uniform_m(Flavor::ttf, 2, 4);
  const auto w = generate_ttf(2, 4, LengthPolicy::uniform(m));
  const auto order = iota_order(w.graph().order());
  const auto rd = caterpillar_decomposition(order, order.size());
  const auto a = rankwidth_audit(w, rd);
  CHECK(a.all_applicable_pass());
  CHECK(a.uniform_m == m);
  CHECK(a.m_at_least_15);
  CHECK(a.m_at_least_4l2);
  CHECK(a.certified_bound <= a.width);
  CHECK(a.separated_layers <= a.width);
  CHECK(a.certified_bound >= a.separated_layers);
  std::size_t applicable = 0;
  for (const auto& s : a.steps) applicable += s.verdict != Verdict::inapplicable;
  CHECK(applicable >= 4);

  const auto plain = generate_ttf(2, 5, LengthPolicy::special());
  const auto po = iota_order(plain.graph().order());
  const auto pa = rankwidth_audit(plain, bisection_decomposition(po, po.size()));
  CHECK(pa.separated_layers <= pa.width);
  bool saw_inapplicable = false;
  for (const auto& s : pa.steps)
    if (s.name == "identity_submatrix" || s.name == "long_subpaths") {
      CHECK(s.verdict == Verdict::inapplicable);
      saw_inapplicable = true;
    }
  CHECK(saw_inapplicable);
}
