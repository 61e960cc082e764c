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

struct ZonePlan {
  bool even = false;  // E (4 marks) or O (3 marks)
  Label owners;
  bool shared = false;
  std::size_t first_mark = 0;
  std::size_t last_mark = 0;
};

struct BoxPlan {
  std::vector<std::size_t> zones;  // indices into the layer's zone list, own zones only
  std::optional<std::size_t> left_shared;
  std::optional<std::size_t> right_shared;
};

struct EhfBuild {
  Draft draft;
  std::size_t max_base_domain = 0;
};

bool share_ancestor(const Label& a, const Label& b) {
  return std::any_of(a.begin(), a.end(), [&](Vertex x) { return std::find(b.begin(), b.end(), x) != b.end(); });
}

std::size_t sum(const std::vector<std::size_t>& gaps, std::size_t first, std::size_t last) {
  std::size_t s = 0;
  for (std::size_t j = first; j < last; ++j) s += gaps[j];
  return s;
}

void check_target(std::optional<std::size_t> target, std::size_t base) {
  if (!target) return;
  if (*target < base || (*target - base) % 2 != 0)
    throw FeasibilityError("uniform m=" + std::to_string(*target) + " cannot reach a base domain of " +
                               std::to_string(base) + " in steps of two",
                           0);
}

EhfBuild build_ehf(std::size_t l, std::size_t k, bool pyramid, bool uniform, std::optional<std::size_t> target) {
  EhfBuild out;
  Draft& d = out.draft;
  const std::size_t gap_odd = (k - 2) % 2 == 1 ? k - 2 : k - 1;
  const std::size_t gap_even = (k - 2) % 2 == 0 ? k - 2 : k - 1;

  const Vertex r = d.add_root();
  {
    LayerPlan plan;
    plan.marks.assign(3, Label{r});
    plan.gaps.assign(2, gap_odd);
    if (uniform) {
      const std::size_t base = 2 * gap_odd + 1;
      out.max_base_domain = std::max(out.max_base_domain, base);
      check_target(target, base);
      if (target) detail::spread_padding(plan.gaps, 0, 2, (*target - base) / 2, 2);
    }
    d.materialize(plan);
  }

  for (std::size_t i = 2; i <= l; ++i) {
    const auto prev = d.layer(i - 1);
    std::vector<ZonePlan> zones;
    std::vector<BoxPlan> boxes(prev.size());
    for (std::size_t p = 0; p < prev.size(); ++p) {
      const Vertex u = prev[p];
      const auto& anc = d.ancestors(u);
      auto own = [&](bool even, Label owners) {
        boxes[p].zones.push_back(zones.size());
        zones.push_back(ZonePlan{even, d.canonical(std::move(owners)), false, 0, 0});
      };
      if (p > 0) boxes[p].left_shared = *boxes[p - 1].right_shared;
      if (anc.size() == 0) {
        own(false, {u});
      } else if (anc.size() == 1) {
        own(false, {u});
        own(false, {u, anc[0]});
        own(false, {u});
      } else {
        const Vertex v = anc[0];
        const Vertex w = anc[1];
        if (!pyramid) own(true, {u});
        own(true, {v, w});
        own(false, {u});
        own(false, {u, v});
        own(false, {u});
        own(false, {u, w});
        own(false, {u});
        own(true, {v, w});
        if (!pyramid) own(true, {u});
      }
      if (p + 1 < prev.size()) {
        boxes[p].right_shared = zones.size();
        zones.push_back(ZonePlan{true, d.canonical({u, prev[p + 1]}), true, 0, 0});
      }
    }

    LayerPlan plan;
    for (auto& z : zones) {
      z.first_mark = plan.marks.size();
      plan.marks.insert(plan.marks.end(), z.even ? 4 : 3, z.owners);
      z.last_mark = plan.marks.size() - 1;
    }
    for (std::size_t j = 0; j + 1 < plan.marks.size(); ++j)
      plan.gaps.push_back(share_ancestor(plan.marks[j], plan.marks[j + 1]) ? gap_odd : gap_even);

    if (uniform) {
      // Domains split each shared zone at its middle edge; an even half keeps
      // every domain size odd, which is what an odd m needs.
      for (const auto& z : zones) {
        if (!z.shared) continue;
        const std::size_t len = sum(plan.gaps, z.first_mark, z.last_mark);
        if (((len + 1) / 2) % 2 == 1) plan.gaps[z.first_mark + 1] += 2;
      }
      for (std::size_t p = 0; p < prev.size(); ++p) {
        const auto& b = boxes[p];
        const std::size_t start = b.left_shared ? zones[*b.left_shared].last_mark : zones[b.zones.front()].first_mark;
        const std::size_t end = b.right_shared ? zones[*b.right_shared].first_mark : zones[b.zones.back()].last_mark;
        const std::size_t priv = sum(plan.gaps, start, end);
        auto half = [&](const std::optional<std::size_t>& z) -> std::size_t {
          if (!z) return 0;
          return (sum(plan.gaps, zones[*z].first_mark, zones[*z].last_mark) + 1) / 2;
        };
        std::size_t base = priv + half(b.left_shared) + half(b.right_shared);
        if (b.left_shared && b.right_shared) base -= 1;
        out.max_base_domain = std::max(out.max_base_domain, base);
        check_target(target, base);
        if (target) detail::spread_padding(plan.gaps, start, end, (*target - base) / 2, 2);
      }
    }
    d.materialize(plan);
  }
  return out;
}

}  // namespace

LayeredWheel generate_ehf(std::size_t l, std::size_t k, LengthPolicy policy, EhfVariant variant) {
  if (l < 1) throw InputError("ehf wheels need l >= 1");
  if (k < 4) throw InputError("ehf wheels need k >= 4");
  const bool pyramid = variant == EhfVariant::pyramid;
  std::optional<std::size_t> target;
  const bool uniform = policy.mode == LengthPolicy::Mode::uniform;
  if (uniform) {
    const std::size_t min_m = minimal_uniform_m(pyramid ? Flavor::ehf_pyramid : Flavor::ehf, l, k);
    if (policy.m < min_m || policy.m % 2 == 0)
      throw FeasibilityError("uniform m=" + std::to_string(policy.m) +
                                 " is infeasible for ehf wheels (m must be odd); minimal feasible m is " +
                                 std::to_string(min_m),
                             min_m);
    target = policy.m;
  }
  EhfBuild b = build_ehf(l, k, pyramid, uniform, target);
  Graph g = b.draft.graph();
  return LayeredWheel::assemble(pyramid ? Flavor::ehf_pyramid : Flavor::ehf, l, k, policy, std::move(g),
                                std::move(b.draft.layers()));
}

namespace detail {
std::size_t ehf_minimal_uniform_m(std::size_t l, std::size_t k, bool pyramid) {
  if (l == 0) return 1;
  std::size_t m = build_ehf(l, k, pyramid, true, std::nullopt).max_base_domain;
  return m % 2 == 1 ? m : m + 1;
}
}  // namespace detail

std::size_t minimal_uniform_m(Flavor flavor, std::size_t l, std::size_t k) {
  if (k < 4) throw InputError("k must be at least 4");
  if (flavor == Flavor::ttf) return detail::ttf_minimal_uniform_m(l, k);
  return detail::ehf_minimal_uniform_m(l, k, flavor == Flavor::ehf_pyramid);
}

}  // namespace lwheel
