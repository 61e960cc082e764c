#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lwheel/audit.hpp"
#include "lwheel/detectors.hpp"
#include "lwheel/graph.hpp"
#include "lwheel/wheel.hpp"
#include "lwheel/width.hpp"

namespace lwheel {

/// Canonical wheel JSON: fixed field order, sorted arrays, one line.
std::string wheel_to_json(const LayeredWheel& w);

struct WheelImport {
  LayeredWheel wheel;
  /// Differences between the metadata stored in the file and the metadata
  /// re-derived from its graph and layers.
  std::vector<std::string> mismatches;
};

/// Throws ParseError on malformed JSON or a wrong schema, IntegrityError if
/// the layers do not partition the vertices.
WheelImport import_wheel_json(std::string_view text);
/// As import_wheel_json, but any metadata mismatch is an IntegrityError.
LayeredWheel wheel_from_json(std::string_view text);

enum class GraphFormat { graph6, dimacs, edgelist, dot };
std::string to_string(GraphFormat f);
/// Accepts the names above; throws InputError otherwise.
GraphFormat graph_format_from_string(const std::string& s);

/// graph6 is limited to n < 2^36.
std::string export_graph(const Graph& g, GraphFormat f);
/// Throws ParseError with the byte offset of the problem.
Graph import_graph(std::string_view text, GraphFormat f);

/// DOT with one rank=same cluster per layer.
std::string wheel_to_dot(const LayeredWheel& w);

std::string to_json(const AuditReport& r);
std::string to_json(const HoleReport& r);
std::string to_json(const PatternReport& r);
std::string to_json(const RankwidthAudit& a);

/// {"nodes": N, "edges": [[a, b], ...], "leaf_of": [...]}
std::string rank_decomposition_to_json(const RankDecomposition& rd);
/// Throws ParseError on malformed input (structure is checked separately).
RankDecomposition rank_decomposition_from_json(std::string_view text);

}  // namespace lwheel
