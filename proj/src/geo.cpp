#include "firefront/geo.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace firefront {

GeoPoint GeoPoint::make(double lat, double lon) {
  if (!std::isfinite(lat) || lat < -90.0 || lat > 90.0) {
    throw std::invalid_argument("latitude out of range: " + std::to_string(lat));
  }
  if (!std::isfinite(lon) || lon < -180.0 || lon > 180.0) {
    throw std::invalid_argument("longitude out of range: " + std::to_string(lon));
  }
  return GeoPoint{lat, lon};
}

double great_circle_distance(GeoPoint a, GeoPoint b) {
  const double phi1 = deg2rad(a.lat);
  const double phi2 = deg2rad(b.lat);
  const double dphi = phi2 - phi1;
  const double dlambda = deg2rad(b.lon - a.lon);
  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlambda / 2.0);
  double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(h));
}

LocalProjection::LocalProjection(GeoPoint origin)
    : origin_(origin),
      m_per_deg_lon_(deg2rad(1.0) * kEarthRadiusM * std::cos(deg2rad(origin.lat))),
      m_per_deg_lat_(deg2rad(1.0) * kEarthRadiusM) {}

PlanarPoint LocalProjection::forward(GeoPoint p) const {
  return {(p.lon - origin_.lon) * m_per_deg_lon_, (p.lat - origin_.lat) * m_per_deg_lat_};
}

GeoPoint LocalProjection::inverse(PlanarPoint p) const {
  return {origin_.lat + p.y / m_per_deg_lat_, origin_.lon + p.x / m_per_deg_lon_};
}

}  // namespace firefront
