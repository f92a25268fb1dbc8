#include "firefront/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "firefront/random.hpp"

namespace firefront {

Matrix distance_matrix(std::span<const GeoPoint> pts) {
  if (pts.size() < 2) throw std::invalid_argument("distance_matrix needs at least 2 vertices");
  Matrix d(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      d(i, j) = d(j, i) = great_circle_distance(pts[i], pts[j]);
    }
  }
  return d;
}

Matrix distance_matrix(std::span<const PlanarPoint> pts) {
  if (pts.size() < 2) throw std::invalid_argument("distance_matrix needs at least 2 vertices");
  Matrix d(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      d(i, j) = d(j, i) = planar_distance(pts[i], pts[j]);
    }
  }
  return d;
}

Matrix time_matrix(std::span<const double> times) {
  if (times.size() < 2) throw std::invalid_argument("time_matrix needs at least 2 vertices");
  Matrix t(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    for (std::size_t j = 0; j < times.size(); ++j) t(i, j) = times[j] - times[i];
  }
  return t;
}

namespace {

double sq_dist(PlanarPoint a, PlanarPoint b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

std::size_t nearest_centroid(PlanarPoint p, const std::vector<PlanarPoint>& c) {
  std::size_t best = 0;
  double best_d = sq_dist(p, c[0]);
  for (std::size_t q = 1; q < c.size(); ++q) {
    const double d = sq_dist(p, c[q]);
    if (d < best_d) {
      best_d = d;
      best = q;
    }
  }
  return best;
}

double wcss_of(std::span<const PlanarPoint> pts, const std::vector<std::size_t>& label,
               const std::vector<PlanarPoint>& c) {
  double s = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) s += sq_dist(pts[i], c[label[i]]);
  return s;
}

}  // namespace

ClusterAssignment kmeans(std::span<const PlanarPoint> pts, std::size_t k, std::size_t max_iter,
                         std::uint64_t seed) {
  const std::size_t n = pts.size();
  if (k == 0) throw std::invalid_argument("kmeans: k must be at least 1");
  if (k > n) throw std::invalid_argument("kmeans: k exceeds the number of points");

  // Seeded partial Fisher-Yates for k distinct starting points.
  Rng rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t q = 0; q < k; ++q) {
    const std::size_t r = q + static_cast<std::size_t>(rng.below(n - q));
    std::swap(order[q], order[r]);
  }
  ClusterAssignment out;
  out.k = k;
  out.centroid.resize(k);
  for (std::size_t q = 0; q < k; ++q) out.centroid[q] = pts[order[q]];
  out.label.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) out.label[i] = nearest_centroid(pts[i], out.centroid);

  std::vector<PlanarPoint> sum(k);
  std::vector<std::size_t> count(k);
  for (std::size_t iter = 0; iter < std::max<std::size_t>(max_iter, 1); ++iter) {
    std::fill(sum.begin(), sum.end(), PlanarPoint{});
    std::fill(count.begin(), count.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      sum[out.label[i]].x += pts[i].x;
      sum[out.label[i]].y += pts[i].y;
      ++count[out.label[i]];
    }
    for (std::size_t q = 0; q < k; ++q) {
      if (count[q] > 0) {
        out.centroid[q] = {sum[q].x / static_cast<double>(count[q]),
                           sum[q].y / static_cast<double>(count[q])};
      }
    }
    // Re-seed empty clusters at the point farthest from its own centroid.
    for (std::size_t q = 0; q < k; ++q) {
      if (count[q] > 0) continue;
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (count[out.label[i]] <= 1) continue;
        const double d = sq_dist(pts[i], out.centroid[out.label[i]]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      if (far_d < 0.0) continue;
      --count[out.label[far]];
      out.label[far] = q;
      count[q] = 1;
      out.centroid[q] = pts[far];
    }
    out.wcss_history.push_back(wcss_of(pts, out.label, out.centroid));
    out.iterations = iter + 1;

    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t q = nearest_centroid(pts[i], out.centroid);
      if (q != out.label[i] && sq_dist(pts[i], out.centroid[q]) <
                                   sq_dist(pts[i], out.centroid[out.label[i]])) {
        out.label[i] = q;
        changed = true;
      }
    }
    if (!changed) break;
  }
  // Centroids consistent with the final labels.
  std::fill(sum.begin(), sum.end(), PlanarPoint{});
  std::fill(count.begin(), count.end(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    sum[out.label[i]].x += pts[i].x;
    sum[out.label[i]].y += pts[i].y;
    ++count[out.label[i]];
  }
  for (std::size_t q = 0; q < k; ++q) {
    if (count[q] > 0) {
      out.centroid[q] = {sum[q].x / static_cast<double>(count[q]),
                         sum[q].y / static_cast<double>(count[q])};
    }
  }
  const double final_wcss = wcss_of(pts, out.label, out.centroid);
  if (out.wcss_history.empty() || final_wcss != out.wcss_history.back()) {
    out.wcss_history.push_back(final_wcss);
  }
  return out;
}

Matrix shorten_intra_cluster(const Matrix& d, std::span<const std::size_t> labels, double m) {
  if (!(m > 0.0 && m <= 1.0)) throw std::invalid_argument("shorten multiplier must be in (0, 1]");
  if (labels.size() != d.size()) throw std::invalid_argument("label count mismatch");
  Matrix out = d;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (i != j && labels[i] == labels[j]) out(i, j) = m * d(i, j);
    }
  }
  return out;
}

Matrix apply_speed_limit(const Matrix& d, const Matrix& tmat, double r_max_mps) {
  if (!(r_max_mps > 0.0)) throw std::invalid_argument("speed limit must be positive");
  Matrix out = d;
  if (r_max_mps == kInf) return out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) {
      const double dt = tmat(i, j);
      if (dt > 0.0 && d(i, j) / (dt * kSecondsPerDay) > r_max_mps) {
        out(i, j) = kInf;
        out(j, i) = kInf;
      }
    }
  }
  return out;
}

SecondarySplit split_secondary_fire(std::span<const PlanarPoint> pts, double ratio,
                                    std::uint64_t seed) {
  const std::size_t n = pts.size();
  if (n < 4) throw std::invalid_argument("split_secondary_fire needs at least 4 vertices");
  // Best of a few seeded restarts; 2-means is prone to poor local minima.
  ClusterAssignment best;
  for (std::uint64_t r = 0; r < 8; ++r) {
    ClusterAssignment c = kmeans(pts, 2, 100, derive_seed(seed, r));
    if (best.k == 0 || c.wcss() < best.wcss()) best = std::move(c);
  }
  std::size_t n1 = 0;
  for (std::size_t l : best.label) n1 += l;
  const std::size_t small_label = n1 < n - n1 ? 1 : 0;
  const std::size_t small = std::min(n1, n - n1);
  SecondarySplit out;
  const bool cut = static_cast<double>(small) < ratio * static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    (cut && best.label[i] == small_label ? out.removed : out.kept).push_back(i);
  }
  return out;
}

Ignition infer_ignition(std::span<const GraphVertex> verts, double backdate_h) {
  if (verts.empty()) throw std::invalid_argument("infer_ignition: no fire vertices");
  double t_min = verts[0].time;
  for (const auto& v : verts) t_min = std::min(t_min, v.time);
  std::vector<std::size_t> earliest;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (verts[i].time == t_min) earliest.push_back(i);
  }
  Ignition ig;
  if (earliest.size() == 1) {
    ig.vertex = verts[earliest[0]];
    ig.index = earliest[0];
    return ig;
  }
  double lat = 0.0;
  double lon = 0.0;
  for (std::size_t i : earliest) {
    lat += verts[i].pos.lat;
    lon += verts[i].pos.lon;
  }
  const auto m = static_cast<double>(earliest.size());
  ig.vertex = {{lat / m, lon / m}, t_min - backdate_h / kHoursPerDay};
  ig.synthetic = true;
  ig.index = verts.size();
  return ig;
}

std::vector<GraphVertex> fire_vertices(const std::vector<Detection>& dets) {
  std::vector<GraphVertex> out;
  for (const Detection& d : dets) {
    if (d.kind == DetectionKind::Fire) out.push_back({d.pos, d.time});
  }
  return out;
}

DetectionGraph build_detection_graph(std::vector<GraphVertex> verts, const LocalProjection& proj,
                                     const GraphConfig& config) {
  if (verts.empty()) throw std::invalid_argument("detection graph needs at least one vertex");
  DetectionGraph g;
  const std::size_t n = verts.size();
  const Ignition ig = infer_ignition(verts, config.backdate_h);
  if (ig.synthetic) verts.push_back(ig.vertex);
  g.vertices = std::move(verts);
  g.ignition = ig.index;
  g.synthetic_ignition = ig.synthetic;
  const std::size_t total = g.vertices.size();
  if (total == 1) {
    g.weight = Matrix(1);
    g.cluster_label.assign(1, 0);
    return g;
  }

  std::vector<GeoPoint> geo(total);
  std::vector<double> times(total);
  std::vector<PlanarPoint> planar(n);
  for (std::size_t i = 0; i < total; ++i) {
    geo[i] = g.vertices[i].pos;
    times[i] = g.vertices[i].time;
    if (i < n) planar[i] = proj.forward(geo[i]);
  }
  const Matrix d = distance_matrix(std::span<const GeoPoint>(geo));
  const Matrix tmat = time_matrix(times);
  Matrix w = apply_speed_limit(d, tmat, config.speed_limit_mps);

  // Each synthetic vertex gets its own label so it is never shortened.
  g.cluster_label.resize(total);
  std::iota(g.cluster_label.begin(), g.cluster_label.end(), 0);
  if (n >= 4 && config.clusters > 0) {
    const std::size_t k = n < 40 ? std::max<std::size_t>(1, n / 2) : std::min(config.clusters, n);
    const ClusterAssignment c = kmeans(planar, k, config.kmeans_max_iter, config.seed);
    for (std::size_t i = 0; i < n; ++i) g.cluster_label[i] = c.label[i];
    for (std::size_t i = n; i < total; ++i) g.cluster_label[i] = k + (i - n);
    w = shorten_intra_cluster(w, g.cluster_label, config.shorten);
  }

  if (config.split_secondary && n >= 4) {
    const SecondarySplit s = split_secondary_fire(planar, config.secondary_ratio,
                                                  derive_seed(config.seed, 0x5ec));
    for (std::size_t r : s.removed) {
      if (!ig.synthetic && r == ig.index) continue;
      g.removed.push_back(r);
      for (std::size_t j = 0; j < total; ++j) {
        if (j == r) continue;
        w(r, j) = kInf;
        w(j, r) = kInf;
      }
    }
  }
  g.weight = std::move(w);
  return g;
}

std::vector<std::size_t> PathSet::unreachable() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < length.size(); ++v) {
    if (!reachable(v)) out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> PathSet::path_to(std::size_t v) const {
  std::vector<std::size_t> out;
  if (!reachable(v)) return out;
  for (std::size_t u = v; u != kNone; u = predecessor[u]) out.push_back(u);
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::size_t>> PathSet::paths() const {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (v != ignition && reachable(v)) out.push_back(path_to(v));
  }
  return out;
}

std::vector<std::size_t> PathSet::multiplicity() const {
  const std::size_t n = vertices.size();
  std::vector<std::size_t> count(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (v == ignition || !reachable(v)) continue;
    for (std::size_t u = v; u != kNone; u = predecessor[u]) ++count[u];
  }
  return count;
}

PathSet shortest_paths(const DetectionGraph& graph, std::size_t source) {
  const std::size_t n = graph.size();
  if (source >= n) throw std::invalid_argument("shortest_paths: source not in graph");
  PathSet ps;
  ps.vertices = graph.vertices;
  ps.ignition = source;
  ps.predecessor.assign(n, PathSet::kNone);
  ps.length.assign(n, kInf);
  ps.hops.assign(n, 0);
  std::vector<bool> done(n, false);
  ps.length[source] = 0.0;

  auto key = [&](std::size_t v) { return std::tuple(ps.length[v], ps.hops[v], v); };
  for (std::size_t round = 0; round < n; ++round) {
    std::size_t u = PathSet::kNone;
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v] || ps.length[v] == kInf) continue;
      if (u == PathSet::kNone || key(v) < key(u)) u = v;
    }
    if (u == PathSet::kNone) break;
    done[u] = true;
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v] || !graph.has_edge(u, v)) continue;
      const double len = ps.length[u] + graph.weight(u, v);
      const std::size_t hops = ps.hops[u] + 1;
      if (std::tuple(len, hops, u) < std::tuple(ps.length[v], ps.hops[v], ps.predecessor[v])) {
        ps.length[v] = len;
        ps.hops[v] = hops;
        ps.predecessor[v] = u;
      }
    }
  }
  return ps;
}

std::vector<double> path_ros(const PathSet& paths) {
  std::vector<double> out;
  for (std::size_t v = 0; v < paths.vertices.size(); ++v) {
    const std::size_t u = paths.predecessor[v];
    if (u == PathSet::kNone) continue;
    const double dt = (paths.vertices[v].time - paths.vertices[u].time) * kSecondsPerDay;
    if (!(dt > 0.0)) throw std::logic_error("path edge with non-positive time difference");
    out.push_back(great_circle_distance(paths.vertices[u].pos, paths.vertices[v].pos) / dt);
  }
  return out;
}

}  // namespace firefront
