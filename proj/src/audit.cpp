#include "lwheel/audit.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "lwheel/errors.hpp"

namespace lwheel {

bool AuditReport::has(const std::string& code) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.code == code; });
}

namespace {

std::string vs(Vertex v) { return std::to_string(v); }

bool share(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  for (Vertex x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) return true;
  return false;
}

std::string label_string(const MarkLabel& m) {
  std::string s = "{";
  for (std::size_t j = 0; j < m.size(); ++j) s += (j ? "," : "") + vs(m[j]);
  return s + "}";
}

void check_layers(const LayeredWheel& w, AuditReport& rep) {
  const Graph& g = w.graph();
  if (w.layer(0).size() != 1)
    rep.violations.push_back({"root_layer", "layer 0 has " + std::to_string(w.layer(0).size()) + " vertices", {}, {}});
  for (std::size_t i = 0; i < w.layers().size(); ++i) {
    const auto& layer = w.layer(i);
    if (layer.empty()) {
      rep.violations.push_back({"layer_empty", "layer " + std::to_string(i) + " is empty", {}, {}});
      continue;
    }
    for (std::size_t p = 0; p + 1 < layer.size(); ++p)
      if (!g.adjacent(layer[p], layer[p + 1]))
        rep.violations.push_back({"layer_path",
                                  "consecutive vertices " + vs(layer[p]) + " and " + vs(layer[p + 1]) +
                                      " of layer " + std::to_string(i) + " are not adjacent",
                                  {layer[p], layer[p + 1]},
                                  Span{i, p, p + 1}});
    for (std::size_t p = 0; p < layer.size(); ++p) {
      for (Vertex x : g.neighbors(layer[p])) {
        const auto& ix = w.info(x);
        if (ix.layer != i || ix.pos <= p + 1) continue;
        rep.violations.push_back({"layer_chord",
                                  "edge " + vs(layer[p]) + "-" + vs(x) + " is a chord of layer " + std::to_string(i),
                                  {layer[p], x},
                                  Span{i, p, ix.pos}});
      }
    }
  }
}

void check_types(const LayeredWheel& w, AuditReport& rep) {
  const int max_type = w.flavor() == Flavor::ttf ? 1 : 2;
  for (Vertex v = 0; v < w.graph().order(); ++v) {
    const auto& info = w.info(v);
    if (info.vtype > max_type) {
      std::vector<Vertex> wit{v};
      wit.insert(wit.end(), info.ancestors.begin(), info.ancestors.end());
      rep.violations.push_back(
          {"vertex_type", "vertex " + vs(v) + " has " + std::to_string(info.vtype) + " ancestors", wit, {}});
    }
    if (is_ehf(w.flavor()) && info.vtype == 2 && !w.graph().adjacent(info.ancestors[0], info.ancestors[1]))
      rep.violations.push_back({"ancestors_adjacent",
                                "ancestors " + vs(info.ancestors[0]) + " and " + vs(info.ancestors[1]) + " of " +
                                    vs(v) + " are not adjacent",
                                {v, info.ancestors[0], info.ancestors[1]},
                                {}});
  }
  for (std::size_t i = 1; i < w.layers().size(); ++i) {
    const auto& layer = w.layer(i);
    if (layer.empty()) continue;
    for (Vertex e : {layer.front(), layer.back()}) {
      if (w.info(e).vtype != 1)
        rep.violations.push_back({"end_type",
                                  "end " + vs(e) + " of layer " + std::to_string(i) + " has type " +
                                      std::to_string(w.info(e).vtype),
                                  {e},
                                  {}});
      if (layer.size() == 1) break;
    }
  }
}

void check_marks(const LayeredWheel& w, AuditReport& rep) {
  for (std::size_t i = 1; i < w.layers().size(); ++i) {
    const auto expected = w.expected_marks(i);
    const auto actual = w.actual_marks(i);
    if (expected == actual) continue;
    std::map<Vertex, std::size_t> want;
    std::map<Vertex, std::size_t> have;
    for (const auto& m : expected)
      for (Vertex a : m) ++want[a];
    for (const auto& m : actual)
      for (Vertex a : m) ++have[a];
    bool counts_differ = false;
    std::map<Vertex, std::pair<std::size_t, std::size_t>> all;
    for (auto [a, c] : want) all[a].first = c;
    for (auto [a, c] : have) all[a].second = c;
    for (auto [a, c] : all) {
      if (c.first == c.second) continue;
      counts_differ = true;
      rep.violations.push_back({"mark_count",
                                "vertex " + vs(a) + " has " + std::to_string(c.second) + " neighbours on layer " +
                                    std::to_string(i) + ", expected " + std::to_string(c.first),
                                {a},
                                {}});
    }
    if (counts_differ) continue;
    std::size_t j = 0;
    while (j < expected.size() && expected[j] == actual[j]) ++j;
    std::vector<Vertex> marks;
    for (Vertex v : w.layer(i))
      if (w.info(v).vtype > 0) marks.push_back(v);
    rep.violations.push_back({"mark_order",
                              "mark " + std::to_string(j) + " of layer " + std::to_string(i) + " is adjacent to " +
                                  label_string(actual[j]) + ", expected " + label_string(expected[j]),
                              {marks[j]},
                              Span{i, w.info(marks[j]).pos, w.info(marks[j]).pos}});
  }
}

void check_gaps(const LayeredWheel& w, AuditReport& rep) {
  const bool ehf = is_ehf(w.flavor());
  for (std::size_t i = 1; i < w.layers().size(); ++i) {
    std::vector<Vertex> marks;
    for (Vertex v : w.layer(i))
      if (w.info(v).vtype > 0) marks.push_back(v);
    for (std::size_t j = 0; j + 1 < marks.size(); ++j) {
      const auto& a = w.info(marks[j]);
      const auto& b = w.info(marks[j + 1]);
      const std::size_t len = b.pos - a.pos;
      const Span span{i, a.pos, b.pos};
      if (len + 2 < w.k())
        rep.violations.push_back({"gap_length",
                                  "path " + vs(marks[j]) + ".." + vs(marks[j + 1]) + " has length " +
                                      std::to_string(len) + " < k-2",
                                  {marks[j], marks[j + 1]},
                                  span});
      if (!ehf) continue;
      const bool common = share(a.ancestors, b.ancestors);
      if (common != (len % 2 == 1))
        rep.violations.push_back({"gap_parity",
                                  "path " + vs(marks[j]) + ".." + vs(marks[j + 1]) + " has length " +
                                      std::to_string(len) + ", expected " + (common ? "odd" : "even"),
                                  {marks[j], marks[j + 1]},
                                  span});
    }
  }
}

void check_odd_neighbors(const LayeredWheel& w, AuditReport& rep) {
  if (w.l() == 0) return;
  for (std::size_t i = 0; i < w.l(); ++i) {
    for (Vertex v : w.layer(i)) {
      std::size_t count = 0;
      for (Vertex x : w.graph().neighbors(v))
        if (w.info(x).layer == w.l()) ++count;
      if (count % 2 == 0)
        rep.violations.push_back({"odd_neighbors",
                                  "vertex " + vs(v) + " has " + std::to_string(count) + " neighbours on the last layer",
                                  {v},
                                  {}});
    }
  }
}

}  // namespace

AuditReport validate_axioms(const LayeredWheel& w) {
  AuditReport rep;
  check_layers(w, rep);
  check_types(w, rep);
  check_marks(w, rep);
  check_gaps(w, rep);
  if (is_ehf(w.flavor())) check_odd_neighbors(w, rep);
  return rep;
}

AuditReport parity_audit(const LayeredWheel& w) {
  if (!is_ehf(w.flavor())) throw InputError("parity_audit needs an ehf wheel");
  AuditReport rep;
  const auto& zones = w.zones();
  auto check = [&](const char* code, const std::string& what, Span s, bool want_odd, std::vector<Vertex> wit) {
    if ((s.length() % 2 == 1) == want_odd) return;
    rep.violations.push_back({code,
                              what + " has length " + std::to_string(s.length()) + ", expected " +
                                  (want_odd ? "odd" : "even"),
                              std::move(wit),
                              s});
  };
  for (std::size_t i = 1; i < w.l(); ++i) {
    if (!w.layer_matches_pattern(i + 1)) {
      rep.violations.push_back({"layer_pattern",
                                "layer " + std::to_string(i + 1) + " does not follow the zone pattern",
                                {},
                                {}});
      continue;
    }
    for (Vertex u : w.layer(i)) {
      const auto& bz = w.box_zones(u);
      const auto& info = w.info(u);
      const bool has_left = !w.is_left_end(u);
      const bool has_right = !w.is_right_end(u);
      const Zone* left = has_left ? &zones[bz.front()] : nullptr;
      const Zone* right = has_right ? &zones[bz.back()] : nullptr;
      const std::string box = "Box(" + vs(u) + ")";
      if (left) check("shared_part", box + " left shared part", left->span, true, {u});
      if (right) check("shared_part", box + " right shared part", right->span, true, {u});

      const std::size_t own_first = has_left ? 1 : 0;
      const std::size_t own_last = bz.size() - (has_right ? 2 : 1);
      const Span priv{i + 1, left ? left->span.hi : zones[bz[own_first]].span.lo,
                      right ? right->span.lo : zones[bz[own_last]].span.hi};
      check("private_part", box + " private part", priv, !(has_left && has_right), {u});

      if (info.vtype == 0) continue;
      // First and last own zone carrying marks of the ancestors.
      std::optional<std::size_t> lo_zone;
      std::optional<std::size_t> hi_zone;
      for (std::size_t j = own_first; j <= own_last; ++j) {
        const Zone& z = zones[bz[j]];
        const bool anc_zone = info.vtype == 1 ? z.owners.size() == 2 : (z.kind == ZoneKind::E && z.owners == info.ancestors);
        if (!anc_zone) continue;
        if (!lo_zone) lo_zone = j;
        hi_zone = j;
      }
      if (!lo_zone) continue;
      if (left)
        check("escape", box + " left escape", Span{i + 1, left->span.hi, zones[bz[*lo_zone]].span.lo}, false,
              info.ancestors);
      if (right)
        check("escape", box + " right escape", Span{i + 1, zones[bz[*hi_zone]].span.hi, right->span.lo}, false,
              info.ancestors);
    }
  }
  return rep;
}

}  // namespace lwheel
