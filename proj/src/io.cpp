#include "lwheel/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <map>

#include "json.hpp"
#include "lwheel/errors.hpp"

namespace lwheel {

using ojson = nlohmann::ordered_json;

namespace {

std::string vs(std::size_t v) { return std::to_string(v); }

ojson span_json(const Span& s) { return ojson{{"layer", s.layer}, {"lo", s.lo}, {"hi", s.hi}}; }

ojson zone_json(const Zone& z) {
  return ojson{{"kind", z.kind == ZoneKind::E ? "E" : "O"},
               {"owners", z.owners},
               {"span", span_json(z.span)},
               {"marks", z.marks}};
}

ojson vertex_json(Vertex v, const VertexInfo& info) {
  return ojson{{"id", v}, {"layer", info.layer}, {"pos", info.pos}, {"type", info.vtype}, {"ancestors", info.ancestors}};
}

ojson edges_json(const Graph& g) {
  ojson out = ojson::array();
  for (const auto& [u, v] : g.edges()) out.push_back({u, v});
  return out;
}

// Schema access that turns every failure into a ParseError.
const ojson& field(const ojson& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'", 0);
  return j.at(key);
}

template <typename T>
T as(const ojson& j, const std::string& what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError("field '" + what + "' has the wrong type", 0);
  }
}

ojson parse(std::string_view text) {
  try {
    return ojson::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), e.byte == 0 ? 0 : e.byte - 1);
  }
}

Graph build_graph(std::size_t n, const std::vector<Edge>& edges, std::size_t offset = 0) {
  GraphBuilder b(n);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw ParseError("edge " + vs(u) + "-" + vs(v) + " uses a vertex outside 0.." + vs(n - 1), offset);
    if (u == v) throw ParseError("self-loop at vertex " + vs(u), offset);
    b.add_edge(u, v);
  }
  return std::move(b).build();
}

ojson witness_json(const Witness& w) {
  ojson roles = ojson::object();
  for (const auto& [name, vs] : w.roles) roles[name] = vs;
  return ojson{{"kind", to_string(w.kind)}, {"vertices", w.vertices}, {"roles", roles}};
}

}  // namespace

std::string wheel_to_json(const LayeredWheel& w) {
  ojson j;
  j["flavor"] = to_string(w.flavor());
  j["l"] = w.l();
  j["k"] = w.k();
  ojson policy{{"mode", to_string(w.policy().mode)}};
  if (w.policy().mode == LengthPolicy::Mode::uniform) policy["m"] = w.policy().m;
  j["policy"] = policy;
  j["layers"] = w.layers();
  ojson vertices = ojson::array();
  for (Vertex v = 0; v < w.graph().order(); ++v) vertices.push_back(vertex_json(v, w.info(v)));
  j["vertices"] = std::move(vertices);
  ojson zones = ojson::array();
  for (const auto& z : w.zones()) zones.push_back(zone_json(z));
  j["zones"] = std::move(zones);
  j["edges"] = edges_json(w.graph());
  return j.dump() + "\n";
}

WheelImport import_wheel_json(std::string_view text) {
  const ojson j = parse(text);
  Flavor flavor;
  try {
    flavor = flavor_from_string(as<std::string>(field(j, "flavor"), "flavor"));
  } catch (const InputError& e) {
    throw ParseError(e.what(), 0);
  }
  const auto l = as<std::size_t>(field(j, "l"), "l");
  const auto k = as<std::size_t>(field(j, "k"), "k");
  const ojson& pj = field(j, "policy");
  const auto mode = as<std::string>(field(pj, "mode"), "policy.mode");
  LengthPolicy policy;
  if (mode == "minimal")
    policy = LengthPolicy::minimal();
  else if (mode == "special")
    policy = LengthPolicy::special();
  else if (mode == "uniform")
    policy = LengthPolicy::uniform(as<std::size_t>(field(pj, "m"), "policy.m"));
  else
    throw ParseError("unknown policy mode '" + mode + "'", 0);

  auto layers = as<std::vector<std::vector<Vertex>>>(field(j, "layers"), "layers");
  const ojson& vj = field(j, "vertices");
  if (!vj.is_array()) throw ParseError("field 'vertices' must be an array", 0);
  const std::size_t n = vj.size();
  auto edges = as<std::vector<std::pair<Vertex, Vertex>>>(field(j, "edges"), "edges");
  Graph g = build_graph(n, edges);

  WheelImport out{LayeredWheel::assemble(flavor, l, k, policy, std::move(g), std::move(layers)), {}};
  const LayeredWheel& w = out.wheel;
  auto note = [&](std::string msg) {
    if (out.mismatches.size() < 32) out.mismatches.push_back(std::move(msg));
  };
  for (std::size_t v = 0; v < n; ++v) {
    const ojson& e = vj[v];
    if (as<std::size_t>(field(e, "id"), "vertices.id") != v) throw ParseError("vertex entry " + vs(v) + " has the wrong id", 0);
    if (e != vertex_json(static_cast<Vertex>(v), w.info(static_cast<Vertex>(v))))
      note("vertex " + vs(v) + ": stored " + e.dump() + ", derived " + vertex_json(static_cast<Vertex>(v), w.info(static_cast<Vertex>(v))).dump());
  }
  const ojson& zj = field(j, "zones");
  if (!zj.is_array()) throw ParseError("field 'zones' must be an array", 0);
  if (zj.size() != w.zones().size()) note("stored " + vs(zj.size()) + " zones, derived " + vs(w.zones().size()));
  for (std::size_t z = 0; z < std::min(zj.size(), w.zones().size()); ++z)
    if (zj[z] != zone_json(w.zones()[z])) note("zone " + vs(z) + ": stored " + zj[z].dump() + ", derived " + zone_json(w.zones()[z]).dump());
  return out;
}

LayeredWheel wheel_from_json(std::string_view text) {
  WheelImport imp = import_wheel_json(text);
  if (!imp.mismatches.empty()) throw IntegrityError("wheel metadata mismatch: " + imp.mismatches.front());
  return std::move(imp.wheel);
}

// --- bare graph formats ---------------------------------------------------------

std::string to_string(GraphFormat f) {
  switch (f) {
    case GraphFormat::graph6: return "graph6";
    case GraphFormat::dimacs: return "dimacs";
    case GraphFormat::edgelist: return "edgelist";
    case GraphFormat::dot: return "dot";
  }
  return "?";
}

GraphFormat graph_format_from_string(const std::string& s) {
  if (s == "graph6" || s == "g6") return GraphFormat::graph6;
  if (s == "dimacs") return GraphFormat::dimacs;
  if (s == "edgelist") return GraphFormat::edgelist;
  if (s == "dot") return GraphFormat::dot;
  throw InputError("unknown graph format '" + s + "'");
}

namespace {

std::string graph6_encode(const Graph& g) {
  const std::uint64_t n = g.order();
  if (n >= (std::uint64_t{1} << 36)) throw InputError("graph6 cannot encode " + vs(n) + " vertices");
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int s = 12; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int s = 30; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  }
  int acc = 0, bits = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++bits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = bits = 0;
      }
    }
  }
  if (bits > 0) out.push_back(static_cast<char>((acc << (6 - bits)) + 63));
  return out + "\n";
}

Graph graph6_decode(std::string_view text) {
  std::size_t p = 0;
  const std::string_view header = ">>graph6<<";
  if (text.substr(0, header.size()) == header) p = header.size();
  std::size_t end = text.size();
  while (end > p && (text[end - 1] == '\n' || text[end - 1] == '\r')) --end;
  auto sixbits = [&](std::size_t at) -> std::uint64_t {
    if (at >= end) throw ParseError("graph6 input ends early", at);
    const unsigned char c = static_cast<unsigned char>(text[at]);
    if (c < 63 || c > 126) throw ParseError("invalid graph6 character", at);
    return c - 63;
  };
  std::uint64_t n = 0;
  if (p < end && text[p] == 126) {
    if (p + 1 < end && text[p + 1] == 126) {
      for (int i = 0; i < 6; ++i) n = (n << 6) | sixbits(p + 2 + i);
      p += 8;
    } else {
      for (int i = 0; i < 3; ++i) n = (n << 6) | sixbits(p + 1 + i);
      p += 4;
    }
  } else {
    n = sixbits(p);
    p += 1;
  }
  const std::uint64_t pairs = n * (n - (n > 0)) / 2;
  const std::uint64_t chars = (pairs + 5) / 6;
  if (end - p != chars)
    throw ParseError("graph6 body has " + vs(end - p) + " characters, expected " + vs(chars), std::min(end, p + chars));
  GraphBuilder b(n);
  std::uint64_t bit = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i, ++bit) {
      const std::uint64_t word = sixbits(p + bit / 6);
      if ((word >> (5 - bit % 6)) & 1U) b.add_edge(i, j);
    }
  }
  for (; bit % 6 != 0; ++bit)
    if ((sixbits(p + bit / 6) >> (5 - bit % 6)) & 1U) throw ParseError("graph6 padding bits are not zero", p + bit / 6);
  return std::move(b).build();
}

// Line-oriented reader that tracks byte offsets.
struct Line {
  std::string_view text;
  std::size_t offset;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back({line, start});
    start = nl + 1;
  }
  return out;
}

struct Token {
  std::string_view text;
  std::size_t offset;
};

std::vector<Token> words(const Line& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.text.size()) {
    while (i < line.text.size() && (line.text[i] == ' ' || line.text[i] == '\t')) ++i;
    const std::size_t s = i;
    while (i < line.text.size() && line.text[i] != ' ' && line.text[i] != '\t') ++i;
    if (i > s) out.push_back({line.text.substr(s, i - s), line.offset + s});
  }
  return out;
}

std::uint64_t number(const Token& t) {
  std::uint64_t v = 0;
  const auto* first = t.text.data();
  const auto* last = first + t.text.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last)
    throw ParseError("expected a non-negative integer, got '" + std::string(t.text) + "'", t.offset);
  return v;
}

Graph dimacs_decode(std::string_view text) {
  std::optional<std::uint64_t> n, m;
  std::vector<Edge> edges;
  std::size_t edge_lines = 0;
  for (const Line& line : split_lines(text)) {
    const auto w = words(line);
    if (w.empty() || w[0].text == "c") continue;
    if (w[0].text == "p") {
      if (n) throw ParseError("second problem line", line.offset);
      if (w.size() != 4 || (w[1].text != "edge" && w[1].text != "col"))
        throw ParseError("problem line must read 'p edge N M'", line.offset);
      n = number(w[2]);
      m = number(w[3]);
      continue;
    }
    if (w[0].text == "e") {
      if (!n) throw ParseError("edge line before the problem line", line.offset);
      if (w.size() != 3) throw ParseError("edge line must read 'e U V'", line.offset);
      const auto u = number(w[1]);
      const auto v = number(w[2]);
      if (u < 1 || v < 1 || u > *n || v > *n) throw ParseError("vertex out of range 1.." + vs(*n), w[1].offset);
      if (u == v) throw ParseError("self-loop", w[1].offset);
      edges.push_back({static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1)});
      ++edge_lines;
      continue;
    }
    throw ParseError("unexpected line '" + std::string(w[0].text) + "'", line.offset);
  }
  if (!n) throw ParseError("missing problem line", text.size());
  if (edge_lines != *m) throw ParseError("problem line promises " + vs(*m) + " edges, found " + vs(edge_lines), text.size());
  return build_graph(*n, edges);
}

Graph edgelist_decode(std::string_view text) {
  std::optional<std::uint64_t> n;
  std::vector<Edge> edges;
  std::uint64_t max_id = 0;
  bool any = false;
  for (const Line& line : split_lines(text)) {
    const auto w = words(line);
    if (w.empty()) continue;
    if (w[0].text.front() == '#') {
      if (w.size() == 3 && w[0].text == "#" && w[1].text == "vertices") n = number(w[2]);
      continue;
    }
    if (w.size() != 2) throw ParseError("edge line must read 'U V'", line.offset);
    const auto u = number(w[0]);
    const auto v = number(w[1]);
    if (u == v) throw ParseError("self-loop", w[0].offset);
    if (n && (u >= *n || v >= *n)) throw ParseError("vertex out of range 0.." + vs(*n - 1), w[0].offset);
    max_id = std::max({max_id, u, v});
    any = true;
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return build_graph(n ? *n : (any ? max_id + 1 : 0), edges);
}

std::string dot_encode(const Graph& g, const std::vector<std::vector<Vertex>>* layers) {
  std::string out = "graph G {\n";
  if (layers) {
    for (std::size_t i = 0; i < layers->size(); ++i) {
      out += "  subgraph layer_" + vs(i) + " {\n    rank=same;\n";
      for (Vertex v : (*layers)[i]) out += "    " + vs(v) + ";\n";
      out += "  }\n";
    }
  } else {
    for (Vertex v = 0; v < g.order(); ++v) out += "  " + vs(v) + ";\n";
  }
  for (const auto& [u, v] : g.edges()) out += "  " + vs(u) + " -- " + vs(v) + ";\n";
  return out + "}\n";
}

// Handles node statements, "a -- b" chains, subgraphs, attribute lists and
// graph-level "key=value" statements. Vertex names must be integers.
Graph dot_decode(std::string_view text) {
  std::size_t i = 0;
  auto skip_space = [&]() {
    while (i < text.size()) {
      const char c = text[i];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++i;
      } else if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
        while (i < text.size() && text[i] != '\n') ++i;
      } else if (c == '#') {
        while (i < text.size() && text[i] != '\n') ++i;
      } else {
        break;
      }
    }
  };
  auto ident = [&]() -> Token {
    skip_space();
    const std::size_t s = i;
    if (i < text.size() && text[i] == '"') {
      ++i;
      while (i < text.size() && text[i] != '"') ++i;
      if (i == text.size()) throw ParseError("unterminated string", s);
      ++i;
      return {text.substr(s + 1, i - s - 2), s + 1};
    }
    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' || text[i] == '.')) ++i;
    if (i == s) throw ParseError("expected an identifier", s);
    return {text.substr(s, i - s), s};
  };
  auto expect = [&](char c) {
    skip_space();
    if (i >= text.size() || text[i] != c) throw ParseError(std::string("expected '") + c + "'", i);
    ++i;
  };
  auto peek = [&]() -> char {
    skip_space();
    return i < text.size() ? text[i] : '\0';
  };
  auto skip_attrs = [&]() {
    if (peek() != '[') return;
    const std::size_t s = i;
    while (i < text.size() && text[i] != ']') ++i;
    if (i == text.size()) throw ParseError("unterminated attribute list", s);
    ++i;
  };

  Token head = ident();
  if (head.text == "strict") head = ident();
  if (head.text != "graph") throw ParseError("only undirected 'graph' is supported", head.offset);
  if (peek() != '{') ident();
  expect('{');

  std::vector<Edge> edges;
  std::uint64_t max_id = 0;
  bool any = false;
  auto vertex = [&](const Token& t) {
    const auto v = number(t);
    max_id = std::max(max_id, v);
    any = true;
    return static_cast<Vertex>(v);
  };
  int depth = 1;
  while (depth > 0) {
    const char c = peek();
    if (c == '\0') throw ParseError("unexpected end of input", i);
    if (c == '}') {
      ++i;
      --depth;
      continue;
    }
    if (c == ';') {
      ++i;
      continue;
    }
    if (c == '{') {
      ++i;
      ++depth;
      continue;
    }
    const Token t = ident();
    if (t.text == "subgraph") {
      if (peek() != '{') ident();
      expect('{');
      ++depth;
      continue;
    }
    if (t.text == "node" || t.text == "edge" || t.text == "graph") {
      skip_attrs();
      continue;
    }
    if (peek() == '=') {
      ++i;
      ident();
      continue;
    }
    Vertex prev = vertex(t);
    while (peek() == '-') {
      if (i + 1 >= text.size() || text[i + 1] != '-') throw ParseError("expected '--'", i);
      i += 2;
      const Vertex next = vertex(ident());
      if (next == prev) throw ParseError("self-loop", i);
      edges.push_back({prev, next});
      prev = next;
    }
    skip_attrs();
  }
  skip_space();
  if (i != text.size()) throw ParseError("trailing content after the graph", i);
  return build_graph(any ? max_id + 1 : 0, edges);
}

}  // namespace

std::string export_graph(const Graph& g, GraphFormat f) {
  switch (f) {
    case GraphFormat::graph6: return graph6_encode(g);
    case GraphFormat::dimacs: {
      std::string out = "p edge " + vs(g.order()) + " " + vs(g.size()) + "\n";
      for (const auto& [u, v] : g.edges()) out += "e " + vs(u + 1) + " " + vs(v + 1) + "\n";
      return out;
    }
    case GraphFormat::edgelist: {
      std::string out = "# vertices " + vs(g.order()) + "\n";
      for (const auto& [u, v] : g.edges()) out += vs(u) + " " + vs(v) + "\n";
      return out;
    }
    case GraphFormat::dot: return dot_encode(g, nullptr);
  }
  return {};
}

Graph import_graph(std::string_view text, GraphFormat f) {
  switch (f) {
    case GraphFormat::graph6: return graph6_decode(text);
    case GraphFormat::dimacs: return dimacs_decode(text);
    case GraphFormat::edgelist: return edgelist_decode(text);
    case GraphFormat::dot: return dot_decode(text);
  }
  return {};
}

std::string wheel_to_dot(const LayeredWheel& w) { return dot_encode(w.graph(), &w.layers()); }

// --- reports -------------------------------------------------------------------

std::string to_json(const AuditReport& r) {
  ojson vs = ojson::array();
  for (const auto& v : r.violations)
    vs.push_back(ojson{{"code", v.code},
                       {"message", v.message},
                       {"vertices", v.vertices},
                       {"span", v.span ? span_json(*v.span) : ojson(nullptr)}});
  return ojson{{"clean", r.clean()}, {"violations", vs}}.dump(2) + "\n";
}

std::string to_json(const HoleReport& r) {
  ojson holes = ojson::array();
  for (const auto& h : r.holes) holes.push_back(witness_json(h));
  return ojson{{"complete", r.complete},
               {"holes_found", r.holes_found},
               {"min_hole_len", r.min_hole_len ? ojson(*r.min_hole_len) : ojson(nullptr)},
               {"has_even_hole", to_string(r.has_even_hole)},
               {"nodes_expanded", r.nodes_expanded},
               {"holes", holes}}
             .dump(2) +
         "\n";
}

std::string to_json(const PatternReport& r) {
  return ojson{{"present", to_string(r.present())},
               {"complete", r.complete},
               {"nodes_expanded", r.nodes_expanded},
               {"witness", r.witness ? witness_json(*r.witness) : ojson(nullptr)}}
             .dump(2) +
         "\n";
}

std::string to_json(const RankwidthAudit& a) {
  ojson steps = ojson::array();
  for (const auto& s : a.steps) steps.push_back(ojson{{"name", s.name}, {"verdict", to_string(s.verdict)}, {"detail", s.detail}});
  return ojson{{"width", a.width},
               {"balanced_edge", {a.balanced_edge.first, a.balanced_edge.second}},
               {"separated_layers", a.separated_layers},
               {"certified_bound", a.certified_bound},
               {"uniform_m", a.uniform_m ? ojson(*a.uniform_m) : ojson(nullptr)},
               {"hypotheses", {{"m_at_least_15", a.m_at_least_15}, {"m_at_least_4l2", a.m_at_least_4l2}}},
               {"steps", steps},
               {"all_applicable_pass", a.all_applicable_pass()}}
             .dump(2) +
         "\n";
}

std::string rank_decomposition_to_json(const RankDecomposition& rd) {
  ojson edges = ojson::array();
  for (const auto& [a, b] : rd.tree.edges) edges.push_back({a, b});
  return ojson{{"nodes", rd.tree.nodes}, {"edges", edges}, {"leaf_of", rd.leaf_of}}.dump() + "\n";
}

RankDecomposition rank_decomposition_from_json(std::string_view text) {
  const ojson j = parse(text);
  RankDecomposition rd;
  rd.tree.nodes = as<std::size_t>(field(j, "nodes"), "nodes");
  rd.tree.edges = as<std::vector<std::pair<Vertex, Vertex>>>(field(j, "edges"), "edges");
  rd.leaf_of = as<std::vector<Vertex>>(field(j, "leaf_of"), "leaf_of");
  return rd;
}

}  // namespace lwheel
