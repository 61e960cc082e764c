#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lwheel/graph.hpp"

namespace lwheel {

enum class Flavor { ttf, ehf, ehf_pyramid };

std::string to_string(Flavor f);
Flavor flavor_from_string(const std::string& s);
inline bool is_ehf(Flavor f) { return f != Flavor::ttf; }

struct LengthPolicy {
  enum class Mode { minimal, special, uniform };
  Mode mode = Mode::minimal;
  std::size_t m = 0;  // only meaningful for uniform

  static LengthPolicy minimal() { return {Mode::minimal, 0}; }
  static LengthPolicy special() { return {Mode::special, 0}; }
  static LengthPolicy uniform(std::size_t m) { return {Mode::uniform, m}; }

  friend bool operator==(const LengthPolicy&, const LengthPolicy&) = default;
};

std::string to_string(LengthPolicy::Mode m);

/// Inclusive range of positions on one layer.
struct Span {
  std::size_t layer = 0;
  std::size_t lo = 0;
  std::size_t hi = 0;

  std::size_t length() const { return hi - lo; }  // in edges
  std::size_t count() const { return hi - lo + 1; }
  bool contains(std::size_t pos) const { return lo <= pos && pos <= hi; }

  friend bool operator==(const Span&, const Span&) = default;
};

enum class ZoneKind { E, O };

/// Subpath of a layer carrying 4 (E) or 3 (O) marked neighbours of its
/// owners. Owners use the canonical ancestor order (later layer first, then
/// left to right).
struct Zone {
  ZoneKind kind = ZoneKind::O;
  std::vector<Vertex> owners;
  Span span;
  std::vector<Vertex> marks;

  friend bool operator==(const Zone&, const Zone&) = default;
};

struct VertexInfo {
  std::size_t layer = 0;
  std::size_t pos = 0;
  int vtype = 0;
  std::vector<Vertex> ancestors;  // canonical order, size == vtype
  std::optional<std::size_t> zone;

  friend bool operator==(const VertexInfo&, const VertexInfo&) = default;
};

/// Expected label of one marked vertex: the ancestor set it must have.
using MarkLabel = std::vector<Vertex>;

/// A layered wheel: graph plus layer structure and derived metadata.
///
/// All metadata (types, ancestors, boxes, zones) is derived from the graph and
/// the layer sequences by assemble(), never trusted from the producer. When a
/// layer's marks do not follow the box pattern dictated by the previous layer
/// (a tampered wheel), boxes and zones for that layer stay empty and
/// `layer_matches_pattern(i)` is false; validate_axioms() explains why.
class LayeredWheel {
 public:
  static LayeredWheel assemble(Flavor flavor, std::size_t l, std::size_t k, LengthPolicy policy,
                               Graph graph, std::vector<std::vector<Vertex>> layers);

  Flavor flavor() const noexcept { return flavor_; }
  std::size_t l() const noexcept { return l_; }
  std::size_t k() const noexcept { return k_; }
  const LengthPolicy& policy() const noexcept { return policy_; }
  const Graph& graph() const noexcept { return graph_; }

  const std::vector<std::vector<Vertex>>& layers() const noexcept { return layers_; }
  const std::vector<Vertex>& layer(std::size_t i) const { return layers_.at(i); }
  const std::vector<VertexInfo>& vinfo() const noexcept { return vinfo_; }
  const VertexInfo& info(Vertex v) const { return vinfo_.at(v); }
  const std::vector<Zone>& zones() const noexcept { return zones_; }

  Vertex at(std::size_t layer, std::size_t pos) const { return layers_.at(layer).at(pos); }
  Vertex root() const { return layers_.at(0).at(0); }
  bool is_left_end(Vertex v) const { return info(v).pos == 0; }
  bool is_right_end(Vertex v) const { return info(v).pos + 1 == layers_[info(v).layer].size(); }

  /// Box of a vertex of layers 0..l-1 on the next layer; nullopt when the
  /// layer does not follow the pattern.
  const std::optional<Span>& box(Vertex v) const { return boxes_.at(v); }
  /// Zone ids (into zones()) making up Box_v, in left-to-right order. Empty
  /// for ttf wheels.
  const std::vector<std::size_t>& box_zones(Vertex v) const { return box_zones_.at(v); }

  bool layer_matches_pattern(std::size_t i) const { return pattern_ok_.at(i); }

  /// Expected ancestor-set sequence of the marks of layer i (i >= 1), derived
  /// from layer i-1 alone.
  std::vector<MarkLabel> expected_marks(std::size_t i) const;
  /// Ancestor sets of the type>=1 vertices of layer i, left to right.
  std::vector<MarkLabel> actual_marks(std::size_t i) const;

 private:
  struct ZoneTemplate {
    ZoneKind kind;
    MarkLabel owners;
    Vertex box_owner;
    bool shared_with_next;  // E zone shared with the right neighbour's box
  };
  std::vector<ZoneTemplate> zone_templates(std::size_t i) const;
  void derive();

  Flavor flavor_ = Flavor::ttf;
  std::size_t l_ = 0;
  std::size_t k_ = 4;
  LengthPolicy policy_;
  Graph graph_;
  std::vector<std::vector<Vertex>> layers_;
  std::vector<VertexInfo> vinfo_;
  std::vector<Zone> zones_;
  std::vector<std::optional<Span>> boxes_;
  std::vector<std::vector<std::size_t>> box_zones_;
  std::vector<bool> pattern_ok_;
};

/// Canonical ancestor order: later layer first; same layer, left to right.
void sort_canonical(const LayeredWheel& w, std::vector<Vertex>& vs);

struct Bridge {
  Span span;
  std::optional<Edge> middle_edge;  // (left vertex, right vertex)
};

/// uv-bridge for u, v consecutive (u left of v) on a layer 1 <= i < l.
/// ttf: path strictly between Box_u and Box_v; ehf: the zone E_{u,v}.
Bridge bridge(const LayeredWheel& w, Vertex u, Vertex v);

/// True iff every bridge of every layer 1..l-1 has odd length.
bool is_special(const LayeredWheel& w);

/// Dom^d(v) as vertex ids, left to right. Throws UnsupportedPolicyError for
/// d >= 1 on non-special wheels and InputError if d exceeds l - layer(v).
std::vector<Vertex> domain(const LayeredWheel& w, Vertex v, std::size_t d);
/// Dom^d(v) as a span on layer(v) + d.
Span domain_span(const LayeredWheel& w, Vertex v, std::size_t d);

/// Scp^d(v) on layer(v) + d.
Span scope(const LayeredWheel& w, Vertex v, std::size_t d);

struct UniformityReport {
  bool special = false;
  std::optional<std::size_t> uniform_m;
  bool neighbor_growth_ok = false;
};

UniformityReport uniformity_audit(const LayeredWheel& w);

}  // namespace lwheel
