#pragma once

// Incremental layer-by-layer builder shared by the two generators.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "lwheel/graph.hpp"

namespace lwheel::detail {

using Label = std::vector<Vertex>;

struct LayerPlan {
  std::vector<Label> marks;
  std::vector<std::size_t> gaps;  // gaps[j]: edges between marks j and j+1
};

class Draft {
 public:
  Vertex add_root() {
    layers_.push_back({new_vertex(0, 0)});
    return layers_[0][0];
  }

  std::size_t layer_of(Vertex v) const { return layer_[v]; }
  std::size_t pos_of(Vertex v) const { return pos_[v]; }
  const std::vector<Vertex>& ancestors(Vertex v) const { return anc_[v]; }
  const std::vector<Vertex>& layer(std::size_t i) const { return layers_[i]; }
  std::vector<std::vector<Vertex>>& layers() { return layers_; }

  Label canonical(Label s) const {
    std::sort(s.begin(), s.end(), [&](Vertex a, Vertex b) {
      if (layer_[a] != layer_[b]) return layer_[a] > layer_[b];
      return pos_[a] < pos_[b];
    });
    return s;
  }

  void materialize(const LayerPlan& plan) {
    const std::size_t i = layers_.size();
    layers_.emplace_back();
    auto& layer = layers_.back();
    for (std::size_t j = 0; j < plan.marks.size(); ++j) {
      const Vertex v = new_vertex(i, layer.size());
      anc_[v] = plan.marks[j];
      for (Vertex a : plan.marks[j]) edges_.emplace_back(a, v);
      if (!layer.empty()) edges_.emplace_back(layer.back(), v);
      layer.push_back(v);
      if (j + 1 == plan.marks.size()) break;
      for (std::size_t f = 1; f < plan.gaps[j]; ++f) {
        const Vertex x = new_vertex(i, layer.size());
        edges_.emplace_back(layer.back(), x);
        layer.push_back(x);
      }
    }
  }

  Graph graph() const { return Graph::from_edges(layer_.size(), edges_); }

 private:
  Vertex new_vertex(std::size_t layer, std::size_t pos) {
    layer_.push_back(layer);
    pos_.push_back(pos);
    anc_.emplace_back();
    return static_cast<Vertex>(layer_.size() - 1);
  }

  std::vector<std::vector<Vertex>> layers_;
  std::vector<std::size_t> layer_;
  std::vector<std::size_t> pos_;
  std::vector<Label> anc_;
  std::vector<Edge> edges_;
};

/// Adds `units` increments of `step` to gaps[first..last), spreading from the
/// middle outwards.
inline void spread_padding(std::vector<std::size_t>& gaps, std::size_t first, std::size_t last,
                           std::size_t units, std::size_t step) {
  const std::size_t count = last - first;
  if (count == 0 || units == 0) return;
  std::vector<std::size_t> order(count);
  for (std::size_t j = 0; j < count; ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto da = 2 * a > count - 1 ? 2 * a - (count - 1) : (count - 1) - 2 * a;
    const auto db = 2 * b > count - 1 ? 2 * b - (count - 1) : (count - 1) - 2 * b;
    return da < db;
  });
  for (std::size_t j = 0; j < count; ++j) {
    const std::size_t share = units / count + (j < units % count ? 1 : 0);
    gaps[first + order[j]] += share * step;
  }
}

std::size_t ttf_minimal_uniform_m(std::size_t l, std::size_t k);
std::size_t ehf_minimal_uniform_m(std::size_t l, std::size_t k, bool pyramid);

}  // namespace lwheel::detail
