#pragma once

#include <cstdint>
#include <vector>

#include "firefront/detection.hpp"
#include "firefront/grid.hpp"

namespace firefront {

/// One elliptical lobe of a cone. Arrival time grows by `slope` days per
/// meter of the lobe's gauge distance; along `direction` the gauge is the
/// plain distance when `offset` is zero.
struct Lobe {
  double slope = 1.0 / (0.05 * kSecondsPerDay);  ///< days per meter (0.05 m/s)
  double direction = 0.0;                         ///< radians counter-clockwise from east
  double aspect = 1.0;                            ///< cross-axis / along-axis, in (0, 1]
  double offset = 0.0;  ///< ellipse center shift along `direction`, fraction of the along axis, [0, 1)

  /// Gauge distance (meters) of planar offset (dx, dy) from the apex.
  double gauge(double dx, double dy) const;
  /// Rate of spread (m/s) in direction `theta`.
  double ros(double theta) const;
};

/// Cone ground truth: the maximum over lobes, apex at the ignition.
struct ConeSpec {
  GeoPoint ignition{};
  double t0 = 0.0;  ///< days
  std::vector<Lobe> lobes{Lobe{}};

  void validate() const;
};

/// Isotropic cone with the given rate of spread.
ConeSpec isotropic_cone(GeoPoint ignition, double t0, double ros_mps);

/// Evaluates the cone on the grid with the apex moved to the nearest node, so
/// that node holds t0. Values are clamped to the time window.
FireArrivalField cone_field(const ConeSpec& spec, const Grid& grid);

/// T(x) = |x| + 1.2 cos x - 1.
double fireline_1d(double x);

struct GranuleSchedule {
  std::vector<double> times;  ///< strictly increasing

  /// t_start, t_start + interval, ... strictly below t_end.
  static GranuleSchedule every(double t_start, double t_end, double interval_days);
  /// Earliest time >= t, or a negative value when there is none.
  double first_at_or_after(double t) const;
  void validate() const;
};

/// Fire detections at a `density` fraction of burned nodes, each reported at
/// the first overpass at or after its arrival time. Confidence is drawn in
/// [confidence_min, 100].
std::vector<Detection> scatter_detections(const FireArrivalField& truth, double density,
                                          const GranuleSchedule& schedule, std::uint64_t seed,
                                          int confidence_min = 70);

/// Non-fire pixels: each (node, overpass) with the node not yet burning is
/// reported with probability `density`.
std::vector<Detection> scatter_nonfire(const FireArrivalField& truth, double density,
                                       const GranuleSchedule& schedule, std::uint64_t seed);

/// Closed contour points in the grid's planar frame.
using Contour = std::vector<PlanarPoint>;

/// All closed contours of {T <= t} (outside the grid counts as unburned).
std::vector<Contour> level_contours(const FireArrivalField& field, double t);

/// `n_points` points spaced evenly by arclength along the longest contour of
/// the t-level set, as fire detections at time t.
std::vector<Detection> synth_perimeter(const FireArrivalField& field, double t,
                                       std::size_t n_points);

}  // namespace firefront
