#pragma once

#include <span>
#include <vector>

#include "firefront/geo.hpp"

namespace firefront {

/// Convex hull by the monotone chain, counter-clockwise, without collinear
/// vertices. Throws std::invalid_argument when fewer than 3 non-collinear points.
std::vector<PlanarPoint> convex_hull(std::span<const PlanarPoint> pts);

/// Even-odd test for a simple polygon; points on the boundary count as inside.
bool point_in_polygon(PlanarPoint p, std::span<const PlanarPoint> polygon);

/// Shoelace area (positive for counter-clockwise order).
double polygon_area(std::span<const PlanarPoint> polygon);

}  // namespace firefront
