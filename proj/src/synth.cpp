#include "firefront/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "firefront/random.hpp"

namespace firefront {

double Lobe::gauge(double dx, double dy) const {
  const double cu = std::cos(direction);
  const double su = std::sin(direction);
  const double u = cu * dx + su * dy;
  const double v = -su * dx + cu * dy;
  const double q = u * u + v * v / (aspect * aspect);
  if (q == 0.0) return 0.0;
  // Smallest lambda with (u, v) / lambda on the ellipse ((u - c)^2 + (v / aspect)^2 = 1).
  const double c = offset;
  const double mu = (u * c + std::sqrt(u * u * c * c - q * (c * c - 1.0))) / q;
  return 1.0 / mu;
}

double Lobe::ros(double theta) const {
  return 1.0 / (slope * kSecondsPerDay * gauge(std::cos(theta), std::sin(theta)));
}

void ConeSpec::validate() const {
  if (lobes.empty()) throw std::invalid_argument("cone needs at least one lobe");
  for (const Lobe& l : lobes) {
    if (!(l.slope > 0.0)) throw std::invalid_argument("lobe slope must be positive");
    if (!(l.aspect > 0.0 && l.aspect <= 1.0)) throw std::invalid_argument("lobe aspect must be in (0, 1]");
    if (!(l.offset >= 0.0 && l.offset < 1.0)) throw std::invalid_argument("lobe offset must be in [0, 1)");
  }
}

ConeSpec isotropic_cone(GeoPoint ignition, double t0, double ros_mps) {
  if (!(ros_mps > 0.0)) throw std::invalid_argument("rate of spread must be positive");
  Lobe l;
  l.slope = 1.0 / (ros_mps * kSecondsPerDay);
  return {ignition, t0, {l}};
}

FireArrivalField cone_field(const ConeSpec& spec, const Grid& grid) {
  spec.validate();
  if (!grid.domain().contains(spec.ignition)) {
    throw std::invalid_argument("cone ignition outside the domain");
  }
  const PlanarPoint apex = grid.node_xy(grid.nearest_node(grid.projection().forward(spec.ignition)));
  std::vector<double> t(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const PlanarPoint p = grid.node_xy(k);
    double v = -kInf;
    for (const Lobe& l : spec.lobes) v = std::max(v, spec.t0 + l.slope * l.gauge(p.x - apex.x, p.y - apex.y));
    t[k] = v;
  }
  return FireArrivalField::clamped(grid, std::move(t));
}

double fireline_1d(double x) { return std::abs(x) + 1.2 * std::cos(x) - 1.0; }

GranuleSchedule GranuleSchedule::every(double t_start, double t_end, double interval_days) {
  if (!(interval_days > 0.0) || !(t_end > t_start)) throw std::invalid_argument("invalid granule schedule");
  GranuleSchedule s;
  for (std::size_t k = 0;; ++k) {
    const double t = t_start + static_cast<double>(k) * interval_days;
    if (t >= t_end) break;
    s.times.push_back(t);
  }
  return s;
}

double GranuleSchedule::first_at_or_after(double t) const {
  const auto it = std::lower_bound(times.begin(), times.end(), t);
  return it == times.end() ? -1.0 : *it;
}

void GranuleSchedule::validate() const {
  if (times.empty()) throw std::invalid_argument("granule schedule is empty");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw std::invalid_argument("granule times must increase");
  }
}

std::vector<Detection> scatter_detections(const FireArrivalField& truth, double density,
                                          const GranuleSchedule& schedule, std::uint64_t seed,
                                          int confidence_min) {
  if (!(density > 0.0 && density <= 1.0)) throw std::invalid_argument("density must be in (0, 1]");
  schedule.validate();
  const Grid& g = truth.grid();
  const double t_end = g.domain().t_end;
  Rng rng(seed);
  const auto span = static_cast<std::uint64_t>(101 - std::clamp(confidence_min, 0, 100));
  std::vector<Detection> out;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!(truth[k] < t_end)) continue;
    const bool pick = rng.bernoulli(density);
    const int conf = confidence_min + static_cast<int>(rng.below(span));
    if (!pick) continue;
    const double t = schedule.first_at_or_after(truth[k]);
    if (t < 0.0 || t > t_end) continue;
    out.push_back({g.node_geo(k), t, DetectionKind::Fire, conf});
  }
  return out;
}

std::vector<Detection> scatter_nonfire(const FireArrivalField& truth, double density,
                                       const GranuleSchedule& schedule, std::uint64_t seed) {
  if (!(density > 0.0 && density <= 1.0)) throw std::invalid_argument("density must be in (0, 1]");
  schedule.validate();
  const Grid& g = truth.grid();
  Rng rng(seed);
  std::vector<Detection> out;
  for (double t : schedule.times) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (!(truth[k] > t)) continue;
      if (rng.bernoulli(density)) out.push_back({g.node_geo(k), t, DetectionKind::NonFireLand, 100});
    }
  }
  return out;
}

std::vector<Contour> level_contours(const FireArrivalField& field, double t) {
  const Grid& g = field.grid();
  // Padded copy so every contour closes; the pad is unburned.
  const std::size_t px = g.nx() + 2;
  const std::size_t py = g.ny() + 2;
  const double pad = std::max(t, g.domain().t_end) + 1.0;
  std::vector<double> v(px * py, pad);
  for (std::size_t j = 0; j < g.ny(); ++j) {
    for (std::size_t i = 0; i < g.nx(); ++i) v[(j + 1) * px + i + 1] = field.at(i, j);
  }
  const PlanarPoint o = g.origin();
  const double h = g.spacing();
  auto node = [&](std::size_t i, std::size_t j) {
    return PlanarPoint{o.x + (static_cast<double>(i) - 1.0) * h, o.y + (static_cast<double>(j) - 1.0) * h};
  };
  auto val = [&](std::size_t i, std::size_t j) { return v[j * px + i]; };
  // Edge ids: 2k for (i,j)-(i+1,j), 2k+1 for (i,j)-(i,j+1), k = j*px+i.
  auto crossing = [&](std::size_t id) {
    const std::size_t k = id / 2;
    const std::size_t i = k % px;
    const std::size_t j = k / px;
    const std::size_t i2 = id % 2 ? i : i + 1;
    const std::size_t j2 = id % 2 ? j + 1 : j;
    const double a = val(i, j);
    const double b = val(i2, j2);
    const double f = (t - a) / (b - a);
    const PlanarPoint p = node(i, j);
    const PlanarPoint q = node(i2, j2);
    return PlanarPoint{p.x + f * (q.x - p.x), p.y + f * (q.y - p.y)};
  };
  std::map<std::size_t, std::vector<std::size_t>> adj;
  auto link = [&](std::size_t a, std::size_t b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  for (std::size_t j = 0; j + 1 < py; ++j) {
    for (std::size_t i = 0; i + 1 < px; ++i) {
      const std::size_t k = j * px + i;
      const bool b0 = val(i, j) <= t;
      const bool b1 = val(i + 1, j) <= t;
      const bool b2 = val(i + 1, j + 1) <= t;
      const bool b3 = val(i, j + 1) <= t;
      const std::size_t bottom = 2 * k;
      const std::size_t left = 2 * k + 1;
      const std::size_t top = 2 * (k + px);
      const std::size_t right = 2 * (k + 1) + 1;
      const int c = (b0 ? 1 : 0) | (b1 ? 2 : 0) | (b2 ? 4 : 0) | (b3 ? 8 : 0);
      switch (c) {
        case 0: case 15: break;
        case 1: case 14: link(bottom, left); break;
        case 2: case 13: link(bottom, right); break;
        case 3: case 12: link(left, right); break;
        case 4: case 11: link(right, top); break;
        case 6: case 9: link(bottom, top); break;
        case 7: case 8: link(left, top); break;
        case 5: case 10: {
          const double centre = 0.25 * (val(i, j) + val(i + 1, j) + val(i + 1, j + 1) + val(i, j + 1));
          const bool mid = centre <= t;
          if ((c == 5) == mid) {
            link(bottom, right);
            link(left, top);
          } else {
            link(bottom, left);
            link(right, top);
          }
          break;
        }
        default: break;
      }
    }
  }
  std::vector<Contour> out;
  std::map<std::size_t, bool> seen;
  for (const auto& [start, nbrs] : adj) {
    if (seen[start]) continue;
    Contour c;
    std::size_t prev = start;
    std::size_t cur = adj[start][0];
    seen[start] = true;
    c.push_back(crossing(start));
    while (cur != start && !seen[cur]) {
      seen[cur] = true;
      c.push_back(crossing(cur));
      const auto& n = adj[cur];
      const std::size_t next = n[0] != prev ? n[0] : (n.size() > 1 ? n[1] : n[0]);
      prev = cur;
      cur = next;
    }
    if (c.size() >= 3) out.push_back(std::move(c));
  }
  return out;
}

std::vector<Detection> synth_perimeter(const FireArrivalField& field, double t,
                                       std::size_t n_points) {
  if (n_points == 0) throw std::invalid_argument("perimeter needs at least one point");
  const std::vector<Contour> contours = level_contours(field, t);
  if (contours.empty()) throw std::invalid_argument("level set is empty");
  auto perimeter = [](const Contour& c) {
    double L = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) L += planar_distance(c[i], c[(i + 1) % c.size()]);
    return L;
  };
  const Contour* best = &contours[0];
  double best_len = perimeter(contours[0]);
  for (const Contour& c : contours) {
    const double L = perimeter(c);
    if (L > best_len) {
      best_len = L;
      best = &c;
    }
  }
  const Contour& c = *best;
  std::vector<double> cum(c.size() + 1, 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) cum[i + 1] = cum[i] + planar_distance(c[i], c[(i + 1) % c.size()]);
  std::vector<Detection> out;
  out.reserve(n_points);
  const LocalProjection& proj = field.grid().projection();
  std::size_t seg = 0;
  for (std::size_t q = 0; q < n_points; ++q) {
    const double s = best_len * static_cast<double>(q) / static_cast<double>(n_points);
    while (seg + 1 < c.size() && cum[seg + 1] <= s) ++seg;
    const double len = cum[seg + 1] - cum[seg];
    const double f = len > 0.0 ? (s - cum[seg]) / len : 0.0;
    const PlanarPoint a = c[seg];
    const PlanarPoint b = c[(seg + 1) % c.size()];
    out.push_back({proj.inverse({a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)}), t,
                   DetectionKind::Fire, 100});
  }
  return out;
}

}  // namespace firefront
