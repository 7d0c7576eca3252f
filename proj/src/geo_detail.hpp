#pragma once

#include "osmag/geo.hpp"

namespace osmag::detail {

inline constexpr double kBoundaryEps = 1e-9;

// Shared by contains_point and the scanline rasterizer so both classify
// cell centres with bit-identical arithmetic.
inline bool straddles(LocalPoint a, LocalPoint b, double py) { return (a.y > py) != (b.y > py); }

inline double crossing_x(LocalPoint a, LocalPoint b, double py) {
  return (b.x - a.x) * (py - a.y) / (b.y - a.y) + a.x;
}

}  // namespace osmag::detail
