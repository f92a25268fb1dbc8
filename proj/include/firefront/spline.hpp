#pragma once

#include <span>
#include <vector>

#include "firefront/geo.hpp"
#include "firefront/graph.hpp"

namespace firefront {

/// Natural cubic smoothing spline minimizing
///   p * sum w_j (y_j - f(s_j))^2 + (1 - p) * integral f''(s)^2 ds.
/// p = 1 interpolates; p = 0 gives the weighted least-squares line.
class SmoothingSpline {
 public:
  SmoothingSpline(std::span<const double> s, std::span<const double> y,
                  std::span<const double> w, double p);

  double operator()(double s) const;
  /// Fitted values at the knots.
  const std::vector<double>& fitted() const { return f_; }
  /// Second derivatives at the knots (zero at both ends).
  const std::vector<double>& curvature() const { return m_; }
  const std::vector<double>& knots() const { return s_; }
  /// Integral of f''^2 over the knot span.
  double roughness() const;
  /// Value of the smoothing functional for this curve with weight `p`.
  double functional(std::span<const double> y, std::span<const double> w, double p) const;

 private:
  std::vector<double> s_;
  std::vector<double> f_;
  std::vector<double> m_;
};

/// A point on a (possibly densified) path.
struct PathPoint {
  GeoPoint pos{};
  double time = 0.0;
  bool inserted = false;
};

/// Position/time splines along a path, parameterized by great-circle arclength.
/// Coincident consecutive points are merged (mean values, summed weights).
class PathSpline {
 public:
  PathSpline(std::span<const GraphVertex> path, const LocalProjection& proj, double p);

  const std::vector<double>& arclength() const { return arclen_; }  ///< per input vertex
  PathPoint at(double s) const;

 private:
  LocalProjection proj_;
  std::vector<double> arclen_;
  std::vector<SmoothingSpline> channels_;  // x, y, t
};

struct DensifyConfig {
  double spacing_max_m = 2000.0;
  std::size_t n_insert = 3;
  double p = 0.9;
};

/// Inserts spline-interpolated points between consecutive vertices farther
/// apart than spacing_max: at least n_insert, more when needed so that no gap
/// remains longer than spacing_max. Inserted times never decrease along the path.
std::vector<PathPoint> densify_path(std::span<const GraphVertex> path,
                                    const LocalProjection& proj, const DensifyConfig& config);

}  // namespace firefront
