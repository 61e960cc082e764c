#pragma once

#include <cstddef>

#include "lwheel/wheel.hpp"

namespace lwheel {

enum class EhfVariant { standard, pyramid };

/// (l,k)-ttf-layered-wheel, k >= 4.
///
/// minimal: every gap between consecutive marks is exactly k-2.
/// special: inter-box segments padded by at most one so every bridge is odd.
/// uniform(m): special, plus box-internal padding so every depth-1 domain has
///   exactly m vertices. Throws FeasibilityError below minimal_uniform_m().
LayeredWheel generate_ttf(std::size_t l, std::size_t k, LengthPolicy policy);

/// (l,k)-ehf-layered-wheel, l >= 1, k >= 4. Gaps take the smallest length
/// >= k-2 of the parity required by the common-ancestor rule; uniform(m) pads
/// in steps of two (m must be odd).
LayeredWheel generate_ehf(std::size_t l, std::size_t k, LengthPolicy policy,
                          EhfVariant variant = EhfVariant::standard);

/// Smallest m accepted by LengthPolicy::uniform for these parameters.
std::size_t minimal_uniform_m(Flavor flavor, std::size_t l, std::size_t k);

}  // namespace lwheel
