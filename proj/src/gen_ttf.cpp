#include <algorithm>
#include <optional>
#include <string>

#include "draft.hpp"
#include "lwheel/errors.hpp"
#include "lwheel/generate.hpp"

namespace lwheel {
namespace {

using detail::Draft;
using detail::Label;
using detail::LayerPlan;

struct TtfBuild {
  Draft draft;
  std::size_t max_base_domain = 0;
};

// Length of the path from the last mark of one box to the first mark of the
// next. The bridge is that path minus its two end edges.
std::size_t inter_box_gap(std::size_t k, LengthPolicy::Mode mode) {
  if (mode == LengthPolicy::Mode::minimal) return k - 2;
  return (k % 2 == 1) ? k - 2 : k - 1;
}

TtfBuild build_ttf(std::size_t l, std::size_t k, LengthPolicy::Mode mode, std::optional<std::size_t> target_m) {
  TtfBuild out;
  Draft& d = out.draft;
  d.add_root();
  const std::size_t inter = inter_box_gap(k, mode);
  const std::size_t half_bridge = (inter - 1) / 2;  // vertices of a bridge on each side of its middle edge
  for (std::size_t i = 1; i <= l; ++i) {
    LayerPlan plan;
    const auto prev = d.layer(i - 1);
    for (std::size_t p = 0; p < prev.size(); ++p) {
      const Vertex u = prev[p];
      const std::size_t first_gap = plan.gaps.size();
      const auto& anc = d.ancestors(u);
      if (anc.empty()) {
        for (int c = 0; c < 3; ++c) plan.marks.push_back({u});
      } else {
        for (int c = 0; c < 3; ++c) plan.marks.push_back({u});
        for (int c = 0; c < 3; ++c) plan.marks.push_back({anc[0]});
        for (int c = 0; c < 3; ++c) plan.marks.push_back({u});
      }
      const std::size_t box_marks = anc.empty() ? 3 : 9;
      plan.gaps.insert(plan.gaps.end(), box_marks - 1, k - 2);

      if (mode != LengthPolicy::Mode::minimal) {
        const std::size_t sides = (p > 0 ? 1 : 0) + (p + 1 < prev.size() ? 1 : 0);
        const std::size_t base = 1 + (box_marks - 1) * (k - 2) + sides * half_bridge;
        out.max_base_domain = std::max(out.max_base_domain, base);
        if (target_m) {
          if (*target_m < base)
            throw FeasibilityError("uniform m=" + std::to_string(*target_m) + " is below a base domain of " +
                                       std::to_string(base),
                                   0);
          detail::spread_padding(plan.gaps, first_gap, plan.gaps.size(), *target_m - base, 1);
        }
      }
      if (p + 1 < prev.size()) plan.gaps.push_back(inter);
    }
    d.materialize(plan);
  }
  return out;
}

}  // namespace

LayeredWheel generate_ttf(std::size_t l, std::size_t k, LengthPolicy policy) {
  if (k < 4) throw InputError("ttf wheels need k >= 4");
  std::optional<std::size_t> target;
  if (policy.mode == LengthPolicy::Mode::uniform) {
    const std::size_t min_m = minimal_uniform_m(Flavor::ttf, l, k);
    if (policy.m < min_m)
      throw FeasibilityError("uniform m=" + std::to_string(policy.m) + " is infeasible; minimal feasible m is " +
                                 std::to_string(min_m),
                             min_m);
    if (l >= 1) target = policy.m;
  }
  TtfBuild b = build_ttf(l, k, policy.mode, target);
  Graph g = b.draft.graph();
  return LayeredWheel::assemble(Flavor::ttf, l, k, policy, std::move(g), std::move(b.draft.layers()));
}

namespace detail {
std::size_t ttf_minimal_uniform_m(std::size_t l, std::size_t k) {
  if (l == 0) return 1;
  return build_ttf(l, k, LengthPolicy::Mode::uniform, std::nullopt).max_base_domain;
}
}  // namespace detail

}  // namespace lwheel
