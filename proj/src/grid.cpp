#include "firefront/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace firefront {

namespace {

constexpr double kCountTolerance = 1e-7;

std::size_t node_count(double extent, double spacing) {
  return static_cast<std::size_t>(std::ceil(extent / spacing - kCountTolerance)) + 1;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); }

}  // namespace

void FireDomain::validate() const {
  if (!(lat_min < lat_max) || !(lon_min < lon_max)) {
    throw std::invalid_argument("degenerate domain bounding box");
  }
  if (lat_min < -90.0 || lat_max > 90.0 || lon_min < -180.0 || lon_max > 180.0) {
    throw std::invalid_argument("domain bounding box outside valid coordinates");
  }
  if (!(t_start < t_end)) {
    throw std::invalid_argument("domain time window requires t_start < t_end");
  }
}

FireDomain FireDomain::around(GeoPoint center, double width_m, double height_m, double t_start,
                              double t_end) {
  if (!(width_m > 0.0) || !(height_m > 0.0)) {
    throw std::invalid_argument("domain size must be positive");
  }
  const LocalProjection proj(center);
  const double dlat = 0.5 * height_m / proj.meters_per_deg_lat();
  const double dlon = 0.5 * width_m / proj.meters_per_deg_lon();
  FireDomain d{center.lat - dlat, center.lat + dlat, center.lon - dlon, center.lon + dlon,
               t_start, t_end};
  d.validate();
  return d;
}

std::size_t Grid::nearest_node(PlanarPoint p) const {
  const double fi = std::round((p.x - origin_.x) / spacing_);
  const double fj = std::round((p.y - origin_.y) / spacing_);
  const auto i = static_cast<std::size_t>(std::clamp(fi, 0.0, static_cast<double>(nx_ - 1)));
  const auto j = static_cast<std::size_t>(std::clamp(fj, 0.0, static_cast<double>(ny_ - 1)));
  return index(i, j);
}

bool Grid::same_domain(const Grid& other) const {
  const FireDomain& a = domain_;
  const FireDomain& b = other.domain_;
  return close(a.lat_min, b.lat_min) && close(a.lat_max, b.lat_max) &&
         close(a.lon_min, b.lon_min) && close(a.lon_max, b.lon_max) &&
         close(a.t_start, b.t_start) && close(a.t_end, b.t_end);
}

bool Grid::same_geometry(const Grid& other) const {
  return same_domain(other) && nx_ == other.nx_ && ny_ == other.ny_ &&
         close(spacing_, other.spacing_);
}

Grid build_grid(const FireDomain& domain, double spacing) {
  domain.validate();
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw std::invalid_argument("grid spacing must be positive");
  }
  Grid g;
  g.domain_ = domain;
  g.spacing_ = spacing;
  g.projection_ = LocalProjection(domain.center());
  g.origin_ = g.projection_.forward({domain.lat_min, domain.lon_min});
  const PlanarPoint far = g.projection_.forward({domain.lat_max, domain.lon_max});
  const double ex = far.x - g.origin_.x;
  const double ey = far.y - g.origin_.y;
  if (spacing > ex * (1.0 + kCountTolerance) || spacing > ey * (1.0 + kCountTolerance)) {
    throw std::invalid_argument("grid spacing " + std::to_string(spacing) +
                                " m exceeds the domain extent");
  }
  g.nx_ = node_count(ex, spacing);
  g.ny_ = node_count(ey, spacing);
  return g;
}

Grid grid_from_corner(GeoPoint lower_left, double spacing, std::size_t nx, std::size_t ny,
                      double t_start, double t_end) {
  if (nx < 2 || ny < 2) throw std::invalid_argument("grid needs at least 2x2 nodes");
  if (!(spacing > 0.0)) throw std::invalid_argument("grid spacing must be positive");
  const double lat_span = static_cast<double>(ny - 1) * spacing / LocalProjection().meters_per_deg_lat();
  const double lat_c = lower_left.lat + 0.5 * lat_span;
  const LocalProjection proj({lat_c, lower_left.lon});
  const double lon_span = static_cast<double>(nx - 1) * spacing / proj.meters_per_deg_lon();
  FireDomain d{lower_left.lat, lower_left.lat + lat_span, lower_left.lon,
               lower_left.lon + lon_span, t_start, t_end};
  Grid g = build_grid(d, spacing);
  if (g.nx() != nx || g.ny() != ny) {
    throw std::invalid_argument("inconsistent grid geometry");
  }
  return g;
}

FireArrivalField::FireArrivalField(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("field size does not match grid");
  }
  const double lo = grid_.domain().t_start;
  const double hi = grid_.domain().t_end;
  const double tol = 1e-9 * std::max(1.0, std::abs(hi));
  for (double& v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("field contains non-finite value");
    if (v < lo - tol || v > hi + tol) {
      throw std::invalid_argument("field value " + std::to_string(v) + " outside time window");
    }
    v = std::clamp(v, lo, hi);
  }
}

FireArrivalField FireArrivalField::clamped(Grid grid, std::vector<double> values) {
  const double lo = grid.domain().t_start;
  const double hi = grid.domain().t_end;
  for (double& v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("field contains non-finite value");
    v = std::clamp(v, lo, hi);
  }
  return FireArrivalField(std::move(grid), std::move(values));
}

FireArrivalField FireArrivalField::constant(Grid grid, double value) {
  std::vector<double> v(grid.size(), value);
  return FireArrivalField(std::move(grid), std::move(v));
}

std::vector<double> resample_values(const Grid& src, std::span<const double> vals,
                                    const Grid& target) {
  if (!src.same_domain(target)) {
    throw std::invalid_argument("resample: grids cover different domains");
  }
  if (vals.size() != src.size()) throw std::invalid_argument("resample: size mismatch");
  if (src.same_geometry(target)) return {vals.begin(), vals.end()};

  const PlanarPoint so = src.origin();
  const PlanarPoint to = target.origin();
  const double h = src.spacing();
  const std::size_t snx = src.nx();
  const std::size_t sny = src.ny();

  std::vector<double> out(target.size());
  for (std::size_t j = 0; j < target.ny(); ++j) {
    const double fy = (to.y + static_cast<double>(j) * target.spacing() - so.y) / h;
    const auto j0 = static_cast<std::size_t>(
        std::clamp(std::floor(fy), 0.0, static_cast<double>(sny - 2)));
    const double ty = fy - static_cast<double>(j0);
    for (std::size_t i = 0; i < target.nx(); ++i) {
      const double fx = (to.x + static_cast<double>(i) * target.spacing() - so.x) / h;
      const auto i0 = static_cast<std::size_t>(
          std::clamp(std::floor(fx), 0.0, static_cast<double>(snx - 2)));
      const double tx = fx - static_cast<double>(i0);
      const double v00 = vals[src.index(i0, j0)];
      const double v10 = vals[src.index(i0 + 1, j0)];
      const double v01 = vals[src.index(i0, j0 + 1)];
      const double v11 = vals[src.index(i0 + 1, j0 + 1)];
      out[target.index(i, j)] = (1.0 - tx) * (1.0 - ty) * v00 + tx * (1.0 - ty) * v10 +
                                (1.0 - tx) * ty * v01 + tx * ty * v11;
    }
  }
  return out;
}

FireArrivalField resample_field(const FireArrivalField& field, const Grid& target) {
  if (field.grid().same_geometry(target)) return field;
  return FireArrivalField::clamped(target, resample_values(field.grid(), field.values(), target));
}

}  // namespace firefront
