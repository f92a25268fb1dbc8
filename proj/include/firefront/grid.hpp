#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "firefront/geo.hpp"

namespace firefront {

/// Spatial bounding box plus the simulated time window (decimal days).
struct FireDomain {
  double lat_min = 0.0;
  double lat_max = 0.0;
  double lon_min = 0.0;
  double lon_max = 0.0;
  double t_start = 0.0;
  double t_end = 1.0;

  void validate() const;
  GeoPoint center() const { return {0.5 * (lat_min + lat_max), 0.5 * (lon_min + lon_max)}; }
  /// Inclusive, with about 0.1 mm of slack so boundary nodes round-trip.
  bool contains(GeoPoint p) const {
    constexpr double tol = 1e-9;
    return p.lat >= lat_min - tol && p.lat <= lat_max + tol && p.lon >= lon_min - tol &&
           p.lon <= lon_max + tol;
  }
  bool contains_time(double t) const { return t >= t_start && t <= t_end; }

  /// Box of the given planar size (meters) centered on `center`.
  static FireDomain around(GeoPoint center, double width_m, double height_m, double t_start,
                           double t_end);

  friend bool operator==(const FireDomain&, const FireDomain&) = default;
};

/// Regular node-registered raster in the local planar projection of its domain.
/// Node (i, j) sits at column i (east) and row j (north); storage is row-major
/// with row 0 on the southern edge.
class Grid {
 public:
  Grid() = default;

  const FireDomain& domain() const { return domain_; }
  double spacing() const { return spacing_; }
  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t size() const { return nx_ * ny_; }

  std::size_t index(std::size_t i, std::size_t j) const { return j * nx_ + i; }
  std::size_t col(std::size_t k) const { return k % nx_; }
  std::size_t row(std::size_t k) const { return k / nx_; }

  const LocalProjection& projection() const { return projection_; }
  /// Planar coordinates of node (0, 0), the (lat_min, lon_min) corner.
  PlanarPoint origin() const { return origin_; }
  PlanarPoint node_xy(std::size_t i, std::size_t j) const {
    return {origin_.x + static_cast<double>(i) * spacing_,
            origin_.y + static_cast<double>(j) * spacing_};
  }
  PlanarPoint node_xy(std::size_t k) const { return node_xy(col(k), row(k)); }
  GeoPoint node_geo(std::size_t k) const { return projection_.inverse(node_xy(k)); }
  /// Nearest node to a planar position, clamped to the grid.
  std::size_t nearest_node(PlanarPoint p) const;

  /// Same domain (spatial box and time window), ignoring spacing.
  bool same_domain(const Grid& other) const;
  /// Same domain, spacing and node counts.
  bool same_geometry(const Grid& other) const;

 private:
  friend Grid build_grid(const FireDomain& domain, double spacing);

  FireDomain domain_{};
  double spacing_ = 0.0;
  std::size_t nx_ = 0;
  std::size_t ny_ = 0;
  LocalProjection projection_{};
  PlanarPoint origin_{};
};

/// Node counts are ceil(extent / spacing) + 1 per axis.
Grid build_grid(const FireDomain& domain, double spacing);

/// Rebuilds the grid whose lower-left node is `lower_left` with the given node
/// counts (the geometry stored in raster headers).
Grid grid_from_corner(GeoPoint lower_left, double spacing, std::size_t nx, std::size_t ny,
                      double t_start, double t_end);

/// Fire arrival time (decimal days) per grid node.
class FireArrivalField {
 public:
  FireArrivalField() = default;
  /// Throws std::invalid_argument on size mismatch, non-finite values, or
  /// values outside the domain's time window.
  FireArrivalField(Grid grid, std::vector<double> values);
  /// Clamps values into [t_start, t_end] instead of rejecting them.
  static FireArrivalField clamped(Grid grid, std::vector<double> values);
  /// Every node set to `value`.
  static FireArrivalField constant(Grid grid, double value);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  double at(std::size_t i, std::size_t j) const { return values_[grid_.index(i, j)]; }
  std::size_t size() const { return values_.size(); }

  std::vector<double> take_values() && { return std::move(values_); }

 private:
  Grid grid_{};
  std::vector<double> values_;
};

/// Bilinear resampling of raw node values from `source` onto `target`, with
/// linear extrapolation past the source's last nodes and no clamping.
std::vector<double> resample_values(const Grid& source, std::span<const double> values,
                                    const Grid& target);

/// Bilinear resampling onto `target` (linear extrapolation past the source's
/// last nodes), clamped to the time window. Throws if the domains differ.
FireArrivalField resample_field(const FireArrivalField& field, const Grid& target);

}  // namespace firefront
