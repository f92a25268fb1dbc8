#pragma once

#include <cmath>
#include <limits>
#include <numbers>

namespace firefront {

/// Mean Earth radius (IUGG), meters.
inline constexpr double kEarthRadiusM = 6371008.8;
inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kHoursPerDay = 24.0;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline constexpr double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / std::numbers::pi; }

struct GeoPoint {
  double lat = 0.0;  ///< degrees, [-90, 90]
  double lon = 0.0;  ///< degrees, [-180, 180]

  /// Checked construction; throws std::invalid_argument outside the valid ranges.
  static GeoPoint make(double lat, double lon);

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

struct PlanarPoint {
  double x = 0.0;  ///< meters east of the projection origin
  double y = 0.0;  ///< meters north of the projection origin

  friend bool operator==(const PlanarPoint&, const PlanarPoint&) = default;
};

inline double planar_distance(PlanarPoint a, PlanarPoint b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// Haversine distance on the sphere of radius kEarthRadiusM.
double great_circle_distance(GeoPoint a, GeoPoint b);

/// Equirectangular projection about a fixed origin. Adequate for domains of a
/// few hundred kilometers; x scales with cos(origin latitude).
class LocalProjection {
 public:
  LocalProjection() = default;
  explicit LocalProjection(GeoPoint origin);

  PlanarPoint forward(GeoPoint p) const;
  GeoPoint inverse(PlanarPoint p) const;

  GeoPoint origin() const { return origin_; }
  /// Meters per degree of longitude / latitude.
  double meters_per_deg_lon() const { return m_per_deg_lon_; }
  double meters_per_deg_lat() const { return m_per_deg_lat_; }

 private:
  GeoPoint origin_{};
  double m_per_deg_lon_ = deg2rad(1.0) * kEarthRadiusM;
  double m_per_deg_lat_ = deg2rad(1.0) * kEarthRadiusM;
};

}  // namespace firefront
