#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lwheel/wheel.hpp"

namespace lwheel {

struct Violation {
  std::string code;     // short machine-readable tag, e.g. "gap_parity"
  std::string message;  // human-readable detail
  std::vector<Vertex> vertices;
  std::optional<Span> span;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct AuditReport {
  std::vector<Violation> violations;

  bool clean() const noexcept { return violations.empty(); }
  bool has(const std::string& code) const;
};

/// Checks the construction rules of the wheel's flavor. Codes:
///   layer_empty, root_layer, layer_path, layer_chord, vertex_type,
///   ancestors_adjacent, end_type, mark_count, mark_order, gap_length,
///   gap_parity (ehf), odd_neighbors (ehf).
AuditReport validate_axioms(const LayeredWheel& w);

/// Box parities of an ehf wheel, for boxes of vertices in layers 1..l-1:
/// shared parts odd, private part even (odd at layer ends), escapes even.
/// Codes: layer_pattern, shared_part, private_part, escape.
/// Throws InputError on ttf wheels.
AuditReport parity_audit(const LayeredWheel& w);

}  // namespace lwheel
