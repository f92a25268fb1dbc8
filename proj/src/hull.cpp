#include "firefront/hull.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace firefront {

namespace {

double cross(PlanarPoint o, PlanarPoint a, PlanarPoint b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(PlanarPoint p, PlanarPoint a, PlanarPoint b) {
  const double len = std::hypot(b.x - a.x, b.y - a.y);
  const double tol = 1e-9 * std::max(1.0, len);
  if (std::abs(cross(a, b, p)) > tol * std::max(1.0, len)) return false;
  return p.x >= std::min(a.x, b.x) - tol && p.x <= std::max(a.x, b.x) + tol &&
         p.y >= std::min(a.y, b.y) - tol && p.y <= std::max(a.y, b.y) + tol;
}

}  // namespace

std::vector<PlanarPoint> convex_hull(std::span<const PlanarPoint> pts) {
  std::vector<PlanarPoint> p(pts.begin(), pts.end());
  std::sort(p.begin(), p.end(), [](PlanarPoint a, PlanarPoint b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) throw std::invalid_argument("convex hull needs 3 distinct points");
  std::vector<PlanarPoint> h(2 * p.size());
  std::size_t k = 0;
  for (const PlanarPoint& q : p) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], q) <= 0.0) --k;
    h[k++] = q;
  }
  for (std::size_t i = p.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(h[k - 2], h[k - 1], p[i]) <= 0.0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  if (h.size() < 3) throw std::invalid_argument("convex hull of collinear points is degenerate");
  return h;
}

bool point_in_polygon(PlanarPoint p, std::span<const PlanarPoint> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const PlanarPoint a = polygon[i];
    const PlanarPoint b = polygon[j];
    if (on_segment(p, a, b)) return true;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

double polygon_area(std::span<const PlanarPoint> polygon) {
  double a = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    a += polygon[j].x * polygon[i].y - polygon[i].x * polygon[j].y;
  }
  return 0.5 * a;
}

}  // namespace firefront
