// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lwheel/audit.hpp"
#include "lwheel/detectors.hpp"
#include "lwheel/errors.hpp"
#include "lwheel/generate.hpp"
#include "lwheel/gf2.hpp"
#include "lwheel/io.hpp"
#include "lwheel/width.hpp"
#include "oracles.hpp"

using namespace lwheel;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects the first few failure messages of one criterion.
struct Checker {
  std::size_t checks = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok && failures.size() == 5) failures.push_back("...");
  }
  bool ok() const { return failures.empty(); }
};

std::string label(const LayeredWheel& w) {
  std::ostringstream s;
  s << to_string(w.flavor()) << "(l=" << w.l() << ",k=" << w.k() << "," << to_string(w.policy().mode);
  if (w.policy().mode == LengthPolicy::Mode::uniform) s << " m=" << w.policy().m;
  s << ")";
  return s.str();
}

// ---------------------------------------------------------------------------

std::string c1(Checker& c) {
  double slowest_theta = 0;
  for (std::size_t l = 0; l <= 2; ++l)
    for (std::size_t k = 4; k <= 7; ++k) {
      const LayeredWheel w = generate_ttf(l, k, LengthPolicy::minimal());
      const std::string name = label(w);
      const Graph& g = w.graph();
      c.expect(validate_axioms(w).clean(), name + ": axioms");
      c.expect(!small_pattern_report(g).has_triangle, name + ": triangle");
      const std::size_t ref = oracle::girth(g);
      const auto lib = girth(g);
      c.expect(lib.value_or(0) == ref, name + ": girth disagrees with BFS oracle");
      if (l >= 1) c.expect(ref == k, name + ": girth " + std::to_string(ref) + " != k");
      if (k <= 5) {
        const auto t0 = Clock::now();
        const PatternReport r = find_theta(g);
        const double dt = seconds_since(t0);
        slowest_theta = std::max(slowest_theta, dt);
        c.expect(r.complete && !r.witness, name + ": theta search not clean");
        c.expect(dt <= 300.0, name + ": theta search over 5 minutes");
      }
    }
  char buf[96];
  std::snprintf(buf, sizeof buf, "12 ttf wheels, slowest theta search %.2fs", slowest_theta);
  return buf;
}

std::string c2(Checker& c) {
  const auto t0 = Clock::now();
  for (std::size_t l = 1; l <= 2; ++l)
    for (std::size_t k = 4; k <= 5; ++k) {
      const LayeredWheel w = generate_ehf(l, k, LengthPolicy::minimal());
      const std::string name = label(w);
      const Graph& g = w.graph();
      c.expect(validate_axioms(w).clean(), name + ": axioms");
      c.expect(parity_audit(w).clean(), name + ": parity");
      const HoleReport h = enumerate_holes(g);
      c.expect(h.complete, name + ": hole enumeration incomplete");
      c.expect(h.has_even_hole == Tri::no, name + ": even hole");
      c.expect(h.min_hole_len && *h.min_hole_len >= k, name + ": hole shorter than k");
      for (const auto& hole : h.holes) c.expect(oracle::is_hole(g, hole.roles.at("cycle")), name + ": bad hole");
      c.expect(!small_pattern_report(g).has_k4, name + ": K4");
      const PatternReport py = find_pyramid(g);
      c.expect(py.complete && !py.witness, name + ": pyramid search not clean");
      const PatternReport pr = find_prism(g);
      c.expect(pr.complete && !pr.witness, name + ": prism search not clean");
    }
  const double dt = seconds_since(t0);
  c.expect(dt <= 900.0, "ehf batch over 15 minutes");
  char buf[96];
  std::snprintf(buf, sizeof buf, "4 ehf wheels in %.2fs", dt);
  return buf;
}

std::string c3(Checker& c) {
  const LayeredWheel w = generate_ehf(3, 4, LengthPolicy::minimal(), EhfVariant::pyramid);
  c.expect(validate_axioms(w).clean(), "axioms");
  c.expect(parity_audit(w).clean(), "parity");
  const Witness wit = pyramid_witness_in_variant(w);
  c.expect(wit.kind == PatternKind::pyramid, "witness kind");
  c.expect(validate_witness(w.graph(), wit), "library re-validation");
  const auto& roles = wit.roles;
  bool indep = roles.count("apex") && roles.count("triangle") && roles.count("path1") && roles.count("path2") &&
               roles.count("path3") && roles.at("apex").size() == 1;
  if (indep)
    indep = oracle::is_pyramid(w.graph(), roles.at("apex")[0], roles.at("triangle"),
                               {roles.at("path1"), roles.at("path2"), roles.at("path3")});
  c.expect(indep, "independent pyramid check");
  return "pyramid-variant G_{3,4}, " + std::to_string(w.graph().order()) + " vertices, witness on " +
         std::to_string(wit.vertices.size()) + " vertices";
}

std::vector<LayeredWheel> width_corpus() {
  std::vector<LayeredWheel> out;
  for (std::size_t l = 0; l <= 3; ++l)
    for (std::size_t k = 4; k <= 7; ++k) {
      out.push_back(generate_ttf(l, k, LengthPolicy::minimal()));
      out.push_back(generate_ttf(l, k, LengthPolicy::special()));
      if (l <= 2) out.push_back(generate_ttf(l, k, LengthPolicy::uniform(minimal_uniform_m(Flavor::ttf, l, k))));
    }
  for (std::size_t l = 1; l <= 3; ++l)
    for (std::size_t k = 4; k <= 5; ++k) {
      out.push_back(generate_ehf(l, k, LengthPolicy::minimal()));
      out.push_back(generate_ehf(l, k, LengthPolicy::minimal(), EhfVariant::pyramid));
      if (l <= 2) out.push_back(generate_ehf(l, k, LengthPolicy::uniform(minimal_uniform_m(Flavor::ehf, l, k))));
    }
  return out;
}

std::string c4(Checker& c) {
  const auto corpus = width_corpus();
  for (const auto& w : corpus) {
    const std::string name = label(w);
    const Graph& g = w.graph();
    try {
      const MinorCertificate mc = minor_certificate(w);
      c.expect(!check_minor(g, mc), name + ": minor check");
      c.expect(mc.branch_sets.size() == w.l() + 1, name + ": minor size");
    } catch (const IntegrityError& e) {
      c.expect(false, name + ": " + e.what());
    }
    try {
      const PathDecompositionResult pd = path_decomposition(w);
      c.expect(!check_path_decomposition(g, pd.pd), name + ": library path decomposition check");
      c.expect(oracle::valid_path_decomposition(g, pd.pd.bags), name + ": oracle path decomposition check");
      c.expect(pd.width == pd.pd.width(), name + ": reported width");
      c.expect(pd.width <= 2 * w.l(), name + ": width above 2l");
      c.expect(pd.width >= w.l(), name + ": width below l");
    } catch (const IntegrityError& e) {
      c.expect(false, name + ": " + e.what());
    }
    const auto model = interval_model(w);
    c.expect(!interval_embedding_failure(w, model), name + ": interval embedding");
    bool edges_ok = true;
    for (const auto& [u, v] : g.edges())
      edges_ok = edges_ok && std::max(model[u].lo, model[v].lo) <= std::min(model[u].hi, model[v].hi);
    c.expect(edges_ok, name + ": edge-by-edge interval overlap");
  }
  return std::to_string(corpus.size()) + " wheels with l <= 3";
}

// ---------------------------------------------------------------------------

std::string c5(Checker& c, std::mt19937_64& rng) {
  // (a) fuzzy triangular matrices
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
    GF2Matrix m(n, n);
    oracle::BitRows rows(n, std::vector<bool>(n));
    std::bernoulli_distribution coin(0.5);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rows[i][j] = i == j || coin(rng);
    for (std::size_t i = 1; i < n; ++i) {
      if (coin(rng))
        for (std::size_t r = 0; r < i; ++r) rows[r][i] = false;
      else
        for (std::size_t q = 0; q < i; ++q) rows[i][q] = false;
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m.set(i, j, rows[i][j]);
    c.expect(is_fuzzy_triangular(m), "(a) generated matrix not recognised as fuzzy triangular");
    c.expect(gf2_rank(m) == n, "(a) gf2_rank below n");
    c.expect(oracle::rank_gf2(rows) == n, "(a) oracle rank below n");
  }
  // (b) balanced edges
  for (int t = 0; t < 200; ++t) {
    const std::size_t leaves = std::uniform_int_distribution<std::size_t>(2, 200)(rng);
    auto [nodes, edges] = oracle::random_cubic_tree(rng, leaves);
    CubicTree tree{nodes, edges};
    const Edge e = find_balanced_edge(tree);
    const auto [a, b] = oracle::leaf_split(nodes, edges, e);
    const std::size_t third = (leaves + 2) / 3;
    c.expect(a >= third && b >= third, "(b) unbalanced edge for " + std::to_string(leaves) + " leaves");
    c.expect(a + b == leaves, "(b) split does not cover the leaves");
  }
  // (c) separated layers
  const std::vector<LayeredWheel> wheels{generate_ttf(2, 4, LengthPolicy::minimal()),
                                         generate_ttf(2, 5, LengthPolicy::special()),
                                         generate_ehf(2, 4, LengthPolicy::minimal())};
  for (int t = 0; t < 100; ++t) {
    const LayeredWheel& w = wheels[static_cast<std::size_t>(t) % wheels.size()];
    std::vector<bool> in_x(w.graph().order(), false);
    std::size_t expected_separated = 0;
    for (const auto& layer : w.layers()) {
      const int mode = std::uniform_int_distribution<int>(0, 3)(rng);
      const std::size_t cut = std::uniform_int_distribution<std::size_t>(0, layer.size())(rng);
      std::bernoulli_distribution coin(0.5);
      for (std::size_t p = 0; p < layer.size(); ++p) {
        bool x = mode == 0 ? false : mode == 1 ? true : mode == 2 ? p < cut : coin(rng);
        in_x[layer[p]] = x;
      }
      const auto ins = std::count_if(layer.begin(), layer.end(), [&](Vertex v) { return in_x[v]; });
      if (ins > 0 && static_cast<std::size_t>(ins) < layer.size()) ++expected_separated;
    }
    std::vector<Vertex> x;
    for (Vertex v = 0; v < in_x.size(); ++v)
      if (in_x[v]) x.push_back(v);
    const SeparatedLayers s = separated_layer_witness(w, x);
    const std::size_t cr = oracle::cutrank(w.graph(), in_x);
    c.expect(s.layers.size() == expected_separated, "(c) separated layer count");
    c.expect(s.rank == s.layers.size(), "(c) witness rank != separated layers");
    c.expect(s.rank == oracle::rank_gf2([&] {
               oracle::BitRows r(s.sx.size(), std::vector<bool>(s.sy.size()));
               for (std::size_t i = 0; i < s.sx.size(); ++i)
                 for (std::size_t j = 0; j < s.sy.size(); ++j) r[i][j] = w.graph().adjacent(s.sx[i], s.sy[j]);
               return r;
             }()),
             "(c) witness rank disagrees with oracle");
    c.expect(s.rank <= cr, "(c) witness rank above cutrank");
    c.expect(cutrank(w.graph(), x) == cr, "(c) library cutrank disagrees with oracle");
  }
  // (d) every graph on at most 5 vertices against every labelled cubic tree
  std::size_t graphs = 0;
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto trees = oracle::labelled_cubic_trees(n);
    std::vector<Edge> pairs;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    for (std::uint32_t mask = 0; mask < (1U << pairs.size()); ++mask) {
      std::vector<Edge> es;
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (mask >> i & 1U) es.push_back(pairs[i]);
      const Graph g = Graph::from_edges(n, es);
      ++graphs;
      for (const auto& t : trees) {
        RankDecomposition rd{CubicTree{t.size() + 1, t}, {}};
        for (Vertex v = 0; v < n; ++v) rd.leaf_of.push_back(v);
        c.expect(rank_decomposition_width(g, rd) == oracle::tree_width(g, t),
                 "(d) width mismatch on n=" + std::to_string(n) + " mask=" + std::to_string(mask));
      }
    }
  }
  return "500 matrices, 200 trees, 100 bipartitions, " + std::to_string(graphs) + " small graphs";
}

std::string c6(Checker& c) {
  const std::size_t m = minimal_uniform_m(Flavor::ttf, 2, 4);
  const LayeredWheel w = generate_ttf(2, 4, LengthPolicy::uniform(m));
  const Vertex r = w.root();
  c.expect(domain(w, r, 1).size() == m, "|Dom^1(r)| != m");
  for (Vertex v : w.layer(1)) c.expect(domain(w, v, 1).size() == m, "|Dom^1(v)| != m on P_1");
  c.expect(domain(w, r, 2).size() == m * m, "|Dom^2(r)| != m^2");
  // Equal-depth domains partition their target layer into consecutive runs.
  for (std::size_t i = 0; i + 1 <= w.l(); ++i)
    for (std::size_t d = 1; i + d <= w.l(); ++d) {
      std::vector<Vertex> joined;
      for (Vertex v : w.layer(i)) {
        const auto dom = domain(w, v, d);
        joined.insert(joined.end(), dom.begin(), dom.end());
      }
      c.expect(joined == w.layer(i + d),
               "depth-" + std::to_string(d) + " domains of P_" + std::to_string(i) + " do not partition P_" +
                   std::to_string(i + d));
    }
  const std::size_t prefix = w.layer(0).size() + w.layer(1).size();
  const std::size_t standalone = generate_ttf(1, 4, LengthPolicy::uniform(m)).graph().order();
  c.expect(prefix == standalone, "prefix differs from G_{1,k}");
  c.expect(standalone * (m - 1) < w.layer(2).size(), "prefix bound |V(G_1)| < |P_2|/(m-1)");
  return "ttf l=2 k=4 m=" + std::to_string(m) + ": |V(G_1)|=" + std::to_string(standalone) +
         ", |P_2|/(m-1)=" + std::to_string(w.layer(2).size()) + "/" + std::to_string(m - 1);
}

std::string c7(Checker& c, std::mt19937_64& rng) {
  const std::size_t m = minimal_uniform_m(Flavor::ttf, 2, 4);
  const LayeredWheel w = generate_ttf(2, 4, LengthPolicy::uniform(m));
  const std::size_t n = w.graph().order();
  std::vector<Vertex> id(n);
  std::iota(id.begin(), id.end(), 0);
  const auto model = interval_model(w);
  std::vector<Vertex> by_interval = id;
  std::stable_sort(by_interval.begin(), by_interval.end(), [&](Vertex a, Vertex b) {
    return std::pair(model[a].lo, model[a].hi) < std::pair(model[b].lo, model[b].hi);
  });
  std::vector<Vertex> shuffled = id;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);

  const std::vector<std::pair<std::string, RankDecomposition>> decs{
      {"caterpillar/id", caterpillar_decomposition(id, n)},
      {"caterpillar/interval", caterpillar_decomposition(by_interval, n)},
      {"bisection/interval", bisection_decomposition(by_interval, n)},
      {"bisection/id", bisection_decomposition(id, n)},
      {"bisection/random", bisection_decomposition(shuffled, n)}};
  std::ostringstream summary;
  summary << "m=" << m << ";";
  for (const auto& [name, rd] : decs) {
    const RankwidthAudit a = rankwidth_audit(w, rd);
    std::size_t applicable = 0;
    for (const auto& s : a.steps) {
      if (s.verdict == Verdict::inapplicable) continue;
      ++applicable;
      c.expect(s.verdict == Verdict::pass, name + ": step " + s.name + " failed (" + s.detail + ")");
    }
    c.expect(applicable > 0, name + ": no applicable step");
    c.expect(a.certified_bound <= a.width, name + ": certified bound above width");
    c.expect(a.width == rank_decomposition_width(w.graph(), rd), name + ": width mismatch");
    summary << " " << name << " bound " << a.certified_bound << "<=" << a.width;
  }
  return summary.str();
}

// ---------------------------------------------------------------------------

LayeredWheel random_wheel(std::mt19937_64& rng) {
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  const std::size_t kind = pick(0, 2);
  const std::size_t policy = pick(0, 2);
  if (kind == 0) {
    const std::size_t l = pick(0, policy == 2 ? 2 : 3);
    const std::size_t k = pick(4, l == 3 ? 5 : 7);
    if (policy == 0) return generate_ttf(l, k, LengthPolicy::minimal());
    if (policy == 1) return generate_ttf(l, k, LengthPolicy::special());
    return generate_ttf(l, k, LengthPolicy::uniform(minimal_uniform_m(Flavor::ttf, l, k) + pick(0, 3)));
  }
  const EhfVariant variant = kind == 1 ? EhfVariant::standard : EhfVariant::pyramid;
  const Flavor f = kind == 1 ? Flavor::ehf : Flavor::ehf_pyramid;
  if (policy == 2) {
    const std::size_t l = pick(1, 2);
    const std::size_t k = pick(4, 5);
    return generate_ehf(l, k, LengthPolicy::uniform(minimal_uniform_m(f, l, k) + 2 * pick(0, 2)), variant);
  }
  const std::size_t l = pick(1, 2);
  return generate_ehf(l, pick(4, 6), policy == 0 ? LengthPolicy::minimal() : LengthPolicy::special(), variant);
}

std::string c8(Checker& c, std::mt19937_64& rng) {
  for (int t = 0; t < 100; ++t) {
    const LayeredWheel w = random_wheel(rng);
    const std::string text = wheel_to_json(w);
    try {
      const LayeredWheel back = wheel_from_json(text);
      c.expect(wheel_to_json(back) == text, label(w) + ": JSON not byte-identical");
      c.expect(back.graph() == w.graph() && back.layers() == w.layers(), label(w) + ": structure differs");
    } catch (const std::exception& e) {
      c.expect(false, label(w) + ": " + e.what());
    }
  }
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 50)(rng);
    const double p = std::uniform_real_distribution<double>(0.0, 0.6)(rng);
    const Graph g = oracle::random_graph(rng, n, p);
    for (GraphFormat f : {GraphFormat::graph6, GraphFormat::dimacs, GraphFormat::edgelist}) {
      try {
        const std::string text = export_graph(g, f);
        const Graph back = import_graph(text, f);
        c.expect(back == g, to_string(f) + ": graph differs (n=" + std::to_string(n) + ")");
        c.expect(export_graph(back, f) == text, to_string(f) + ": text not stable");
      } catch (const std::exception& e) {
        c.expect(false, to_string(f) + ": " + e.what());
      }
    }
  }
  return "100 wheels through JSON, 100 graphs through graph6, DIMACS and edge list";
}

}  // namespace

int main() {
  std::mt19937_64 rng(20240611);
  const std::vector<std::pair<std::string, std::function<std::string(Checker&)>>> criteria{
      {"construction soundness, ttf", c1},
      {"construction soundness, ehf", c2},
      {"pyramid variant witness", c3},
      {"width bracket", c4},
      {"rank machinery", [&](Checker& c) { return c5(c, rng); }},
      {"domains and uniformity", c6},
      {"rankwidth audit on heuristic decompositions", [&](Checker& c) { return c7(c, rng); }},
      {"serialization round trips", [&](Checker& c) { return c8(c, rng); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Checker c;
    std::string detail;
    const auto t0 = Clock::now();
    try {
      detail = criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", seconds_since(t0));
    std::cout << (c.ok() ? "PASS" : "FAIL") << "  C" << (i + 1) << " " << criteria[i].first << " -- " << detail
              << " [" << c.checks << " checks, " << timing << "]\n";
    for (const auto& f : c.failures) std::cout << "      " << f << "\n";
    if (!c.ok()) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
