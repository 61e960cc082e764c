#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lwheel/gf2.hpp"
#include "lwheel/graph.hpp"
#include "lwheel/wheel.hpp"

namespace lwheel {

/// Disjoint connected branch sets, pairwise joined by an edge: a model of a
/// complete minor on branch_sets.size() vertices.
struct MinorCertificate {
  std::vector<std::vector<Vertex>> branch_sets;
};

/// Empty when valid, otherwise a description of the first failure.
std::optional<std::string> check_minor(const Graph& g, const MinorCertificate& c);

/// The layers as branch sets. Throws IntegrityError when they do not form a
/// complete minor (disconnected layer, unjoined pair).
MinorCertificate minor_certificate(const LayeredWheel& w);

/// Interval of last-layer positions per vertex: scope for earlier layers,
/// {pos, pos+1} on the last layer ({pos} at its right end).
std::vector<Span> interval_model(const LayeredWheel& w);

/// First edge of w.graph() whose two intervals are disjoint, if any.
std::optional<Edge> interval_embedding_failure(const LayeredWheel& w, const std::vector<Span>& model);

struct PathDecomposition {
  std::vector<std::vector<Vertex>> bags;

  /// Largest bag minus one; 0 for no bags.
  std::size_t width() const;
};

/// Empty when bags cover every vertex and edge and each vertex's bags are
/// consecutive; otherwise the first failure.
std::optional<std::string> check_path_decomposition(const Graph& g, const PathDecomposition& pd);

struct PathDecompositionResult {
  PathDecomposition pd;
  std::size_t width = 0;
  std::size_t max_coverage = 0;  // most intervals sharing one position
};

/// Bags stab the interval model at each position of the last layer. Throws
/// IntegrityError if the result fails check_path_decomposition.
PathDecompositionResult path_decomposition(const LayeredWheel& w);

/// Tree whose nodes all have degree 1 or 3.
struct CubicTree {
  std::size_t nodes = 0;
  std::vector<Edge> edges;

  std::vector<std::vector<Vertex>> adjacency() const;
  std::vector<Vertex> leaves() const;
};

/// Throws InputError unless t is a tree on >= 2 nodes with degrees in {1, 3}.
void check_cubic_tree(const CubicTree& t);

struct RankDecomposition {
  CubicTree tree;
  std::vector<Vertex> leaf_of;  // graph vertex -> tree leaf
};

/// Throws InputError unless rd is a cubic tree whose leaves are in bijection
/// with the vertices of g.
void check_rank_decomposition(const Graph& g, const RankDecomposition& rd);

/// Graph vertices on the `side` end of tree edge e = (a, b): side a holds the
/// leaves reached from a without crossing e.
std::vector<Vertex> vertices_on_side(const RankDecomposition& rd, Edge e, Vertex side);

/// Max over tree edges of the cutrank of the induced vertex bipartition; 0 for
/// graphs with at most one vertex.
std::size_t rank_decomposition_width(const Graph& g, const RankDecomposition& rd);

/// Edge splitting the leaves into parts of at least |L|/3 each, found by
/// walking from a leaf edge towards the heavier side.
Edge find_balanced_edge(const CubicTree& t);

/// Leaf counts on each side of e, (a side, b side).
std::pair<std::size_t, std::size_t> leaf_split(const CubicTree& t, Edge e);

/// Caterpillar: spine of internal nodes, leaves attached in `order`.
RankDecomposition caterpillar_decomposition(std::span<const Vertex> order, std::size_t n);
/// Recursive halving of `order`.
RankDecomposition bisection_decomposition(std::span<const Vertex> order, std::size_t n);

struct SeparatedLayers {
  std::vector<std::size_t> layers;  // separated layers, in order
  std::vector<Vertex> sx;           // per separated layer: endpoint in X
  std::vector<Vertex> sy;           // per separated layer: endpoint outside X
  GF2Matrix submatrix;              // rows sx, columns sy
  bool fuzzy_triangular = false;
  std::size_t rank = 0;
};

/// For each layer with vertices on both sides of (x, V\x), the first
/// consecutive pair split by the cut.
SeparatedLayers separated_layer_witness(const LayeredWheel& w, std::span<const Vertex> x);

enum class Verdict { pass, fail, inapplicable };
std::string to_string(Verdict v);

struct AuditStep {
  std::string name;
  Verdict verdict = Verdict::inapplicable;
  std::string detail;
};

struct RankwidthAudit {
  std::size_t width = 0;
  Edge balanced_edge{};
  std::size_t separated_layers = 0;
  std::size_t certified_bound = 0;  // a lower bound on the cutrank at the balanced edge
  std::optional<std::size_t> uniform_m;
  bool m_at_least_15 = false;
  bool m_at_least_4l2 = false;
  std::vector<AuditStep> steps;

  bool all_applicable_pass() const;
};

/// Runs the lower-bound argument on one decomposition: balanced edge,
/// separated layers, last-layer components and long subpaths, and an
/// identity submatrix from a layer on one side. Domain-based steps are
/// inapplicable on wheels that are not uniform.
RankwidthAudit rankwidth_audit(const LayeredWheel& w, const RankDecomposition& rd);

}  // namespace lwheel
