#pragma once

#include <array>
#include <cstdint>
#include <functional>

namespace sgw {

/// Number of lattice directions.  Sites live on a triangular lattice; the six
/// unit moves are indexed 0..5 counter-clockwise starting from +x.
inline constexpr int n_directions = 6;

/// Coordinate steps for the six directions, in lattice units scaled by 2 so
/// every site has integer coordinates.
inline constexpr std::array<std::array<std::int64_t, 2>, 6> direction_step{{
    {{2, 0}},    // e0
    {{1, 1}},    // e1
    {{-1, 1}},   // e2
    {{-2, 0}},   // e3
    {{-1, -1}},  // e4
    {{1, -1}},   // e5
}};

/// Direction pointing back along direction k.
constexpr int opposite_direction(int k) { return (k + 3) % 6; }

/// Direction image under the point reflection that exchanges the two gasket
/// copies (an involution on directions: 0<->5, 1<->4, 2<->3).
constexpr int reflect_direction(int k) { return 5 - k; }

/// A lattice site in doubled integer coordinates.
struct site {
  std::int64_t x1 = 0;
  std::int64_t x2 = 0;

  friend constexpr bool operator==(const site&, const site&) = default;
  friend constexpr auto operator<=>(const site&, const site&) = default;
};

/// The site one step from x along direction k.
constexpr site step(site x, int k) {
  return {x.x1 + direction_step[static_cast<std::size_t>(k)][0],
          x.x2 + direction_step[static_cast<std::size_t>(k)][1]};
}

/// The linear involution mapping the primary gasket copy onto the reflected
/// copy (and back).  It fixes the origin and maps direction k to 5-k.
constexpr site reflect(site x) {
  return {(x.x1 - 3 * x.x2) / 2, -(x.x1 + x.x2) / 2};
}

}  // namespace sgw

template <>
struct std::hash<sgw::site> {
  std::size_t operator()(const sgw::site& s) const noexcept {
    auto h1 = std::hash<std::int64_t>{}(s.x1);
    auto h2 = std::hash<std::int64_t>{}(s.x2);
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ull + (h1 << 6) + (h1 >> 2));
  }
};
