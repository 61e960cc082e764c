#pragma once

#include <chrono>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lwheel/graph.hpp"
#include "lwheel/wheel.hpp"

namespace lwheel {

/// Search limits. Running out of any of them makes the result incomplete;
/// an incomplete search never claims absence.
struct Budget {
  std::size_t max_nodes_expanded = std::numeric_limits<std::size_t>::max();
  std::size_t max_results = std::numeric_limits<std::size_t>::max();
  std::optional<std::chrono::milliseconds> deadline;

  static Budget unlimited() { return {}; }
};

enum class Tri { no, yes, unknown };
std::string to_string(Tri t);

enum class PatternKind { hole, theta, pyramid, prism };
std::string to_string(PatternKind k);

/// Vertex set plus the roles that make it an instance of `kind`.
///
/// hole:    cycle (in cyclic order, starting at its smallest vertex).
/// theta:   ends [a, b]; path1..path3 from a to b.
/// pyramid: apex [a]; triangle [b1, b2, b3]; pathI from a to bI.
/// prism:   triangle_a, triangle_b; pathI from triangle_a[I] to triangle_b[I].
struct Witness {
  PatternKind kind = PatternKind::hole;
  std::vector<Vertex> vertices;  // sorted
  std::map<std::string, std::vector<Vertex>> roles;

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Re-checks `w` against the definition of its kind using only g.
bool validate_witness(const Graph& g, const Witness& w);

struct HoleQuery {
  std::optional<std::size_t> max_len;  // only holes up to this length
  std::size_t keep = 16;               // witnesses retained in the result
  bool stop_at_even = false;
};

struct HoleReport {
  std::vector<Witness> holes;          // up to query.keep, plus the first even hole if any
  std::optional<std::size_t> min_hole_len;
  std::size_t holes_found = 0;
  Tri has_even_hole = Tri::unknown;
  bool complete = false;
  std::size_t nodes_expanded = 0;
};

/// Chordless cycles of length >= 4, each found once from its smallest vertex.
/// `min_hole_len` is exact only when complete. With max_len set, has_even_hole
/// only speaks about holes up to that length.
HoleReport enumerate_holes(const Graph& g, const HoleQuery& query = {}, const Budget& b = {});

struct PatternReport {
  std::optional<Witness> witness;
  bool complete = false;
  std::size_t nodes_expanded = 0;

  Tri present() const { return witness ? Tri::yes : (complete ? Tri::no : Tri::unknown); }
};

PatternReport find_theta(const Graph& g, const Budget& b = {});
PatternReport find_pyramid(const Graph& g, const Budget& b = {});
PatternReport find_prism(const Graph& g, const Budget& b = {});

/// Explicit pyramid in the 9-zone variant: triangle u t u'', apex v, where u
/// is a type-2 vertex of P_{l-1} whose ancestors lie on different layers.
/// Throws InputError unless the wheel is the pyramid variant with l >= 3, and
/// IntegrityError when no candidate yields a valid pyramid.
Witness pyramid_witness_in_variant(const LayeredWheel& w);

}  // namespace lwheel
