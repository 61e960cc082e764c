#include "lwheel/wheel.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "lwheel/errors.hpp"

namespace lwheel {

std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::ttf: return "ttf";
    case Flavor::ehf: return "ehf";
    case Flavor::ehf_pyramid: return "ehf_pyramid_variant";
  }
  return "?";
}

Flavor flavor_from_string(const std::string& s) {
  if (s == "ttf") return Flavor::ttf;
  if (s == "ehf") return Flavor::ehf;
  if (s == "ehf_pyramid_variant" || s == "ehf_pyramid") return Flavor::ehf_pyramid;
  throw InputError("unknown flavor '" + s + "'");
}

std::string to_string(LengthPolicy::Mode m) {
  switch (m) {
    case LengthPolicy::Mode::minimal: return "minimal";
    case LengthPolicy::Mode::special: return "special";
    case LengthPolicy::Mode::uniform: return "uniform";
  }
  return "?";
}

void sort_canonical(const LayeredWheel& w, std::vector<Vertex>& vs) {
  std::sort(vs.begin(), vs.end(), [&](Vertex a, Vertex b) {
    const auto& ia = w.info(a);
    const auto& ib = w.info(b);
    if (ia.layer != ib.layer) return ia.layer > ib.layer;
    return ia.pos < ib.pos;
  });
}

LayeredWheel LayeredWheel::assemble(Flavor flavor, std::size_t l, std::size_t k,
                                    LengthPolicy policy, Graph graph,
                                    std::vector<std::vector<Vertex>> layers) {
  if (layers.size() != l + 1)
    throw IntegrityError("wheel has " + std::to_string(layers.size()) + " layers, expected l+1 = " +
                         std::to_string(l + 1));
  LayeredWheel w;
  w.flavor_ = flavor;
  w.l_ = l;
  w.k_ = k;
  w.policy_ = policy;
  w.graph_ = std::move(graph);
  w.layers_ = std::move(layers);
  w.derive();
  return w;
}

void LayeredWheel::derive() {
  const std::size_t n = graph_.order();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  vinfo_.assign(n, VertexInfo{});
  std::vector<std::size_t> seen_layer(n, kNone);
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    for (std::size_t p = 0; p < layers_[i].size(); ++p) {
      const Vertex v = layers_[i][p];
      if (v >= n) throw IntegrityError("layer " + std::to_string(i) + " lists unknown vertex " + std::to_string(v));
      if (seen_layer[v] != kNone)
        throw IntegrityError("vertex " + std::to_string(v) + " appears in more than one layer slot");
      seen_layer[v] = i;
      vinfo_[v].layer = i;
      vinfo_[v].pos = p;
    }
  }
  for (Vertex v = 0; v < n; ++v)
    if (seen_layer[v] == kNone) throw IntegrityError("vertex " + std::to_string(v) + " is in no layer");

  for (Vertex v = 0; v < n; ++v) {
    auto& info = vinfo_[v];
    for (Vertex w : graph_.neighbors(v))
      if (vinfo_[w].layer < info.layer) info.ancestors.push_back(w);
  }
  for (Vertex v = 0; v < n; ++v) {
    sort_canonical(*this, vinfo_[v].ancestors);
    vinfo_[v].vtype = static_cast<int>(vinfo_[v].ancestors.size());
  }

  zones_.clear();
  boxes_.assign(n, std::nullopt);
  box_zones_.assign(n, {});
  pattern_ok_.assign(layers_.size(), true);

  for (std::size_t i = 1; i < layers_.size(); ++i) {
    const auto expected = expected_marks(i);
    const auto actual = actual_marks(i);
    if (expected != actual) {
      pattern_ok_[i] = false;
      continue;
    }
    std::vector<std::size_t> mark_pos;
    for (std::size_t p = 0; p < layers_[i].size(); ++p)
      if (vinfo_[layers_[i][p]].vtype > 0) mark_pos.push_back(p);

    const auto& prev = layers_[i - 1];
    if (flavor_ == Flavor::ttf) {
      std::size_t cursor = 0;
      for (Vertex u : prev) {
        const std::size_t count = vinfo_[u].vtype == 0 ? 3 : 9;
        boxes_[u] = Span{i, mark_pos[cursor], mark_pos[cursor + count - 1]};
        cursor += count;
      }
      continue;
    }

    const auto templates = zone_templates(i);
    std::size_t cursor = 0;
    std::size_t carried = kNone;  // shared E zone opened by the left neighbour
    std::size_t t = 0;
    for (Vertex u : prev) {
      auto& bz = box_zones_[u];
      if (carried != kNone) bz.push_back(carried);
      carried = kNone;
      while (t < templates.size() && templates[t].box_owner == u) {
        const auto& tpl = templates[t];
        const std::size_t count = tpl.kind == ZoneKind::E ? 4 : 3;
        Zone z;
        z.kind = tpl.kind;
        z.owners = tpl.owners;
        z.span = Span{i, mark_pos[cursor], mark_pos[cursor + count - 1]};
        for (std::size_t c = 0; c < count; ++c) z.marks.push_back(layers_[i][mark_pos[cursor + c]]);
        cursor += count;
        const std::size_t id = zones_.size();
        for (std::size_t p = z.span.lo; p <= z.span.hi; ++p) vinfo_[layers_[i][p]].zone = id;
        zones_.push_back(std::move(z));
        bz.push_back(id);
        if (tpl.shared_with_next) carried = id;
        ++t;
      }
      boxes_[u] = Span{i, zones_[bz.front()].span.lo, zones_[bz.back()].span.hi};
    }
  }
}

std::vector<LayeredWheel::ZoneTemplate> LayeredWheel::zone_templates(std::size_t i) const {
  std::vector<ZoneTemplate> out;
  const auto& prev = layers_.at(i - 1);
  auto pair = [&](Vertex a, Vertex b) {
    MarkLabel s{a, b};
    sort_canonical(*this, s);
    return s;
  };
  for (std::size_t p = 0; p < prev.size(); ++p) {
    const Vertex u = prev[p];
    const auto& info = vinfo_[u];
    auto add = [&](ZoneKind kind, MarkLabel owners, bool shared = false) {
      out.push_back(ZoneTemplate{kind, std::move(owners), u, shared});
    };
    if (info.vtype == 1) {
      const Vertex v = info.ancestors[0];
      add(ZoneKind::O, {u});
      add(ZoneKind::O, pair(u, v));
      add(ZoneKind::O, {u});
    } else if (info.vtype == 2) {
      const Vertex v = info.ancestors[0];
      const Vertex x = info.ancestors[1];
      const bool with_e_u = flavor_ != Flavor::ehf_pyramid;
      if (with_e_u) add(ZoneKind::E, {u});
      add(ZoneKind::E, pair(v, x));
      add(ZoneKind::O, {u});
      add(ZoneKind::O, pair(u, v));
      add(ZoneKind::O, {u});
      add(ZoneKind::O, pair(u, x));
      add(ZoneKind::O, {u});
      add(ZoneKind::E, pair(v, x));
      if (with_e_u) add(ZoneKind::E, {u});
    } else {
      // Type 0, and the fallback for malformed types (audited separately).
      add(ZoneKind::O, {u});
    }
    if (p + 1 < prev.size()) add(ZoneKind::E, pair(u, prev[p + 1]), true);
  }
  return out;
}

std::vector<MarkLabel> LayeredWheel::expected_marks(std::size_t i) const {
  std::vector<MarkLabel> out;
  if (i == 0 || i >= layers_.size()) return out;
  if (flavor_ == Flavor::ttf) {
    for (Vertex u : layers_[i - 1]) {
      const auto& info = vinfo_[u];
      if (info.vtype == 1) {
        const Vertex v = info.ancestors[0];
        for (int c = 0; c < 3; ++c) out.push_back({u});
        for (int c = 0; c < 3; ++c) out.push_back({v});
        for (int c = 0; c < 3; ++c) out.push_back({u});
      } else {
        for (int c = 0; c < 3; ++c) out.push_back({u});
      }
    }
    return out;
  }
  for (const auto& tpl : zone_templates(i)) {
    const int count = tpl.kind == ZoneKind::E ? 4 : 3;
    for (int c = 0; c < count; ++c) out.push_back(tpl.owners);
  }
  return out;
}

std::vector<MarkLabel> LayeredWheel::actual_marks(std::size_t i) const {
  std::vector<MarkLabel> out;
  for (Vertex v : layers_.at(i))
    if (vinfo_[v].vtype > 0) out.push_back(vinfo_[v].ancestors);
  return out;
}

namespace {

void check_consecutive(const LayeredWheel& w, Vertex u, Vertex v) {
  const auto& iu = w.info(u);
  const auto& iv = w.info(v);
  if (!w.graph().adjacent(u, v) || iu.layer != iv.layer)
    throw InputError("bridge: " + std::to_string(u) + " and " + std::to_string(v) +
                     " are not adjacent on a common layer");
  if (iv.pos != iu.pos + 1)
    throw InputError("bridge: " + std::to_string(u) + " must be the left neighbour of " + std::to_string(v));
  if (iu.layer == 0 || iu.layer >= w.l())
    throw InputError("bridge: layer " + std::to_string(iu.layer) + " has no bridges (need 1 <= i < l)");
}

const Span& require_box(const LayeredWheel& w, Vertex v) {
  const auto& b = w.box(v);
  if (!b) throw IntegrityError("vertex " + std::to_string(v) + " has no recognisable box");
  return *b;
}

Bridge bridge_unchecked(const LayeredWheel& w, Vertex u, Vertex v) {
  Bridge out;
  if (w.flavor() == Flavor::ttf) {
    const Span& bu = require_box(w, u);
    const Span& bv = require_box(w, v);
    if (bu.hi + 1 >= bv.lo)
      throw IntegrityError("boxes of " + std::to_string(u) + " and " + std::to_string(v) + " leave no bridge");
    out.span = Span{bu.layer, bu.hi + 1, bv.lo - 1};
  } else {
    require_box(w, u);
    const auto& zs = w.box_zones(u);
    out.span = w.zones().at(zs.back()).span;
  }
  const std::size_t len = out.span.length();
  if (len % 2 == 1) {
    const std::size_t p = out.span.lo + (len - 1) / 2;
    out.middle_edge = Edge{w.at(out.span.layer, p), w.at(out.span.layer, p + 1)};
  }
  return out;
}

Span domain1(const LayeredWheel& w, Vertex v) {
  const auto& info = w.info(v);
  if (info.layer == 0) return Span{1, 0, w.layer(1).size() - 1};
  const Span& b = require_box(w, v);
  Span out{info.layer + 1, b.lo, b.hi};
  if (!w.is_left_end(v)) {
    const Vertex left = w.at(info.layer, info.pos - 1);
    out.lo = w.info(bridge_unchecked(w, left, v).middle_edge->second).pos;
  }
  if (!w.is_right_end(v)) {
    const Vertex right = w.at(info.layer, info.pos + 1);
    out.hi = w.info(bridge_unchecked(w, v, right).middle_edge->first).pos;
  }
  return out;
}

Span scope1(const LayeredWheel& w, Vertex v) {
  const auto& info = w.info(v);
  if (info.layer == 0) return Span{1, 0, w.layer(1).size() - 1};
  const Span& b = require_box(w, v);
  Span out{info.layer + 1, b.lo, b.hi};
  if (w.flavor() != Flavor::ttf) return out;
  if (!w.is_left_end(v)) out.lo = bridge_unchecked(w, w.at(info.layer, info.pos - 1), v).span.lo;
  if (!w.is_right_end(v)) out.hi = bridge_unchecked(w, v, w.at(info.layer, info.pos + 1)).span.hi;
  return out;
}

template <typename Step>
Span unfold(const LayeredWheel& w, Vertex v, std::size_t d, Step step) {
  const auto& info = w.info(v);
  if (info.layer + d > w.l())
    throw InputError("depth " + std::to_string(d) + " runs past the last layer from layer " +
                     std::to_string(info.layer));
  if (d == 0) return Span{info.layer, info.pos, info.pos};
  const Span first = step(w, v);
  if (d == 1) return first;
  const Span left = unfold(w, w.at(first.layer, first.lo), d - 1, step);
  const Span right = unfold(w, w.at(first.layer, first.hi), d - 1, step);
  return Span{left.layer, left.lo, right.hi};
}

}  // namespace

Bridge bridge(const LayeredWheel& w, Vertex u, Vertex v) {
  check_consecutive(w, u, v);
  return bridge_unchecked(w, u, v);
}

bool is_special(const LayeredWheel& w) {
  for (std::size_t i = 1; i < w.l(); ++i) {
    const auto& layer = w.layer(i);
    for (std::size_t p = 0; p + 1 < layer.size(); ++p) {
      if (!w.box(layer[p]) || !w.box(layer[p + 1])) return false;
      if (!bridge_unchecked(w, layer[p], layer[p + 1]).middle_edge) return false;
    }
  }
  return true;
}

Span domain_span(const LayeredWheel& w, Vertex v, std::size_t d) {
  if (d >= 1 && !is_special(w))
    throw UnsupportedPolicyError("domains need middle edges: the wheel is not special");
  return unfold(w, v, d, domain1);
}

std::vector<Vertex> domain(const LayeredWheel& w, Vertex v, std::size_t d) {
  const Span s = domain_span(w, v, d);
  const auto& layer = w.layer(s.layer);
  return {layer.begin() + static_cast<std::ptrdiff_t>(s.lo), layer.begin() + static_cast<std::ptrdiff_t>(s.hi) + 1};
}

Span scope(const LayeredWheel& w, Vertex v, std::size_t d) { return unfold(w, v, d, scope1); }

UniformityReport uniformity_audit(const LayeredWheel& w) {
  UniformityReport rep;
  try {
    rep.special = is_special(w);
  } catch (const IntegrityError&) {
    rep.special = false;
  }
  if (rep.special && w.l() >= 1) {
    std::optional<std::size_t> common;
    bool equal = true;
    for (std::size_t i = 0; i < w.l() && equal; ++i) {
      for (Vertex v : w.layer(i)) {
        const std::size_t size = domain1(w, v).count();
        if (!common) common = size;
        if (*common != size) {
          equal = false;
          break;
        }
      }
    }
    if (equal) rep.uniform_m = common;
  }

  rep.neighbor_growth_ok = true;
  std::vector<std::size_t> per_layer(w.l() + 1);
  for (std::size_t i = 0; i < w.l() && rep.neighbor_growth_ok; ++i) {
    for (Vertex v : w.layer(i)) {
      std::fill(per_layer.begin(), per_layer.end(), 0);
      for (Vertex x : w.graph().neighbors(v)) ++per_layer[w.info(x).layer];
      std::size_t need = 1;
      for (std::size_t j = i + 1; j <= w.l(); ++j) {
        need = need > std::numeric_limits<std::size_t>::max() / 3 ? need : need * 3;
        if (per_layer[j] < need) {
          rep.neighbor_growth_ok = false;
          break;
        }
      }
      if (!rep.neighbor_growth_ok) break;
    }
  }
  return rep;
}

}  // namespace lwheel
