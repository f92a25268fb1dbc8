#include "firefront/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "firefront/hull.hpp"
#include "firefront/kernel.hpp"

namespace firefront {

std::vector<double> MultigridSchedule::spacings() const {
  if (!(shrink > 0.0 && shrink < 1.0)) throw std::invalid_argument("shrink must be in (0, 1)");
  if (!(min_spacing_m > 0.0) || !(start_spacing_m >= min_spacing_m)) {
    throw std::invalid_argument("multigrid needs 0 < min_spacing <= start_spacing");
  }
  std::vector<double> out;
  double s = start_spacing_m;
  while (s > min_spacing_m * (1.0 + 1e-12)) {
    out.push_back(s);
    s *= shrink;
  }
  out.push_back(min_spacing_m);
  return out;
}

void EstimatorConfig::validate() const {
  if (!(kernel_sigma_cells > 0.0)) throw std::invalid_argument("kernel_sigma_cells must be positive");
  if (!(rd_threshold >= 0.0)) throw std::invalid_argument("rd_threshold must be non-negative");
  if (max_iter == 0) throw std::invalid_argument("max_iter must be at least 1");
  (void)multigrid.spacings();
}

std::vector<NodeConstraint> aggregate_observations(const Grid& grid,
                                                   std::span<const Observation> obs) {
  struct Acc {
    double sum = 0.0;
    double count = 0.0;
    double factor = 1.0;
  };
  std::map<std::size_t, Acc> acc;
  const FireDomain& dom = grid.domain();
  for (const Observation& o : obs) {
    if (!dom.contains(o.pos)) continue;
    if (!(o.alpha >= 0.0 && o.alpha <= 1.0)) throw std::invalid_argument("alpha must be in [0, 1]");
    Acc& a = acc[grid.nearest_node(grid.projection().forward(o.pos))];
    a.sum += o.time;
    a.count += 1.0;
    a.factor *= std::pow(o.alpha, static_cast<double>(o.multiplicity));
  }
  std::vector<NodeConstraint> out;
  out.reserve(acc.size());
  for (const auto& [node, a] : acc) out.push_back({node, a.sum / a.count, a.factor});
  return out;
}

std::vector<PlanarPoint> fire_hull(std::span<const Observation> fire, const LocalProjection& proj) {
  std::vector<PlanarPoint> pts;
  pts.reserve(fire.size());
  for (const Observation& o : fire) pts.push_back(proj.forward(o.pos));
  try {
    return convex_hull(pts);
  } catch (const std::invalid_argument&) {
    return {};
  }
}

std::vector<double> initial_estimate_values(std::span<const PathPoint> samples, const Grid& grid,
                                            double v_ref_mps) {
  if (samples.empty()) throw std::invalid_argument("initial_estimate: no path samples");
  if (!(v_ref_mps > 0.0)) throw std::invalid_argument("initial_estimate: v_ref must be positive");
  std::vector<PlanarPoint> xy(samples.size());
  for (std::size_t q = 0; q < samples.size(); ++q) xy[q] = grid.projection().forward(samples[q].pos);
  const double per_meter = 1.0 / (v_ref_mps * kSecondsPerDay);
  std::vector<double> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const PlanarPoint p = grid.node_xy(k);
    std::size_t best = 0;
    double best_d = kInf;
    for (std::size_t q = 0; q < xy.size(); ++q) {
      const double dx = p.x - xy[q].x;
      const double dy = p.y - xy[q].y;
      const double d = dx * dx + dy * dy;
      if (d < best_d) {
        best_d = d;
        best = q;
      }
    }
    out[k] = samples[best].time + std::sqrt(best_d) * per_meter;
  }
  return out;
}

FireArrivalField initial_estimate(std::span<const PathPoint> samples, const Grid& grid,
                                  double v_ref_mps) {
  return FireArrivalField::clamped(grid, initial_estimate_values(samples, grid, v_ref_mps));
}

double median_edge_ros(const PathSet& paths, double fallback_mps) {
  std::vector<double> ros = path_ros(paths);
  if (ros.empty()) return fallback_mps;
  std::sort(ros.begin(), ros.end());
  const std::size_t m = ros.size() / 2;
  const double v = ros.size() % 2 ? ros[m] : 0.5 * (ros[m - 1] + ros[m]);
  return v > 0.0 ? v : fallback_mps;
}

FireArrivalField initial_estimate(const PathSet& paths, const Grid& grid, double fallback_ros_mps) {
  std::vector<PathPoint> samples;
  for (std::size_t v = 0; v < paths.vertices.size(); ++v) {
    if (paths.reachable(v)) samples.push_back({paths.vertices[v].pos, paths.vertices[v].time, false});
  }
  if (samples.empty()) throw std::invalid_argument("initial_estimate: empty path set");
  const double v_ref = median_edge_ros(paths, fallback_ros_mps);
  return initial_estimate(samples, grid, v_ref);
}

namespace {

void apply_constraints(std::vector<double>& t, std::span<const NodeConstraint> cs) {
  for (const NodeConstraint& c : cs) t[c.node] = c.factor * (t[c.node] - c.target) + c.target;
}

// Non-fire raise in place; `kernel` spreads the increments.
void nonfire_in_place(std::vector<double>& t, const Grid& grid,
                      std::span<const NodeConstraint> nonfire, std::span<const PlanarPoint> hull,
                      const GaussianKernel& kernel) {
  if (hull.empty() || nonfire.empty()) return;
  std::vector<double> inc(t.size(), 0.0);
  bool any = false;
  const double t_end = grid.domain().t_end;
  for (const NodeConstraint& c : nonfire) {
    if (point_in_polygon(grid.node_xy(c.node), hull)) continue;
    const double target = c.factor * (t[c.node] - t_end) + t_end;
    const double d = target - t[c.node];
    if (d > 0.0) {
      inc[c.node] = std::max(inc[c.node], d);
      any = true;
    }
  }
  if (!any) return;
  const std::vector<double> spread = separable_smooth(inc, grid.nx(), grid.ny(), kernel);
  for (std::size_t k = 0; k < t.size(); ++k) t[k] += spread[k];
}

std::vector<NodeConstraint> per_detection_constraints(const SnappedDetections& dets,
                                                      std::span<const double> alpha,
                                                      std::span<const std::size_t> multiplicity) {
  if (alpha.size() != dets.size()) throw std::invalid_argument("one alpha per detection required");
  if (!multiplicity.empty() && multiplicity.size() != dets.size()) {
    throw std::invalid_argument("one multiplicity per detection required");
  }
  std::vector<Observation> obs(dets.size());
  for (std::size_t k = 0; k < dets.size(); ++k) {
    obs[k] = {dets.detections[k].pos, dets.detections[k].time, alpha[k],
              multiplicity.empty() ? 1 : multiplicity[k]};
  }
  // Aggregate on the node the detection was snapped to.
  struct Acc {
    double sum = 0.0;
    double count = 0.0;
    double factor = 1.0;
  };
  std::map<std::size_t, Acc> acc;
  for (std::size_t k = 0; k < dets.size(); ++k) {
    if (!(alpha[k] >= 0.0 && alpha[k] <= 1.0)) throw std::invalid_argument("alpha must be in [0, 1]");
    Acc& a = acc[dets.node[k]];
    a.sum += obs[k].time;
    a.count += 1.0;
    a.factor *= std::pow(alpha[k], static_cast<double>(obs[k].multiplicity));
  }
  std::vector<NodeConstraint> out;
  for (const auto& [node, a] : acc) out.push_back({node, a.sum / a.count, a.factor});
  return out;
}

}  // namespace

FireArrivalField update_at_detections(const FireArrivalField& field,
                                      std::span<const NodeConstraint> constraints) {
  std::vector<double> t(field.values().begin(), field.values().end());
  apply_constraints(t, constraints);
  return FireArrivalField::clamped(field.grid(), std::move(t));
}

FireArrivalField update_at_detections(const FireArrivalField& field,
                                      const SnappedDetections& fire,
                                      std::span<const double> alpha,
                                      std::span<const std::size_t> multiplicity) {
  const auto cs = per_detection_constraints(fire, alpha, multiplicity);
  return update_at_detections(field, cs);
}

FireArrivalField gaussian_smooth(const FireArrivalField& field, double sigma_cells) {
  const GaussianKernel kernel(sigma_cells);
  const Grid& g = field.grid();
  return FireArrivalField::clamped(g, separable_smooth(field.values(), g.nx(), g.ny(), kernel));
}

FireArrivalField apply_nonfire(const FireArrivalField& field,
                               std::span<const NodeConstraint> nonfire,
                               std::span<const PlanarPoint> hull, double sigma_cells) {
  std::vector<double> t(field.values().begin(), field.values().end());
  nonfire_in_place(t, field.grid(), nonfire, hull, GaussianKernel(sigma_cells));
  return FireArrivalField::clamped(field.grid(), std::move(t));
}

FireArrivalField apply_nonfire(const FireArrivalField& field, const SnappedDetections& nonfire,
                               std::span<const PlanarPoint> hull, std::span<const double> alpha,
                               double sigma_cells) {
  const auto cs = per_detection_constraints(nonfire, alpha, {});
  return apply_nonfire(field, cs, hull, sigma_cells);
}

double relative_difference(std::span<const double> a, std::span<const double> b) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    num += (a[k] - b[k]) * (a[k] - b[k]);
    den += b[k] * b[k];
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : kInf;
  return std::sqrt(num / den);
}

namespace {

// The iteration on raw values; nothing is clamped here.
std::vector<double> iterate_values(const Grid& g, std::vector<double> t,
                                   std::span<const NodeConstraint> fire,
                                   std::span<const NodeConstraint> nonfire,
                                   std::span<const PlanarPoint> hull, const EstimatorConfig& config,
                                   std::vector<double>& rd_out) {
  const GaussianKernel kernel(config.kernel_sigma_cells);
  for (std::size_t it = 0; it < config.max_iter; ++it) {
    const std::vector<double> prev = t;
    apply_constraints(t, fire);
    t = separable_smooth(t, g.nx(), g.ny(), kernel);
    if (config.use_nonfire) nonfire_in_place(t, g, nonfire, hull, kernel);
    const double rd = relative_difference(t, prev);
    rd_out.push_back(rd);
    if (rd < config.rd_threshold) break;
  }
  return t;
}

}  // namespace

IterateResult iterate(const FireArrivalField& field0, std::span<const NodeConstraint> fire,
                      std::span<const NodeConstraint> nonfire,
                      std::span<const PlanarPoint> hull, const EstimatorConfig& config) {
  config.validate();
  IterateResult res;
  std::vector<double> t = iterate_values(field0.grid(), {field0.values().begin(), field0.values().end()},
                                         fire, nonfire, hull, config, res.rd);
  res.field = FireArrivalField::clamped(field0.grid(), std::move(t));
  return res;
}

IterateResult iterate(const FireArrivalField& field0, const ObservationSet& obs,
                      const EstimatorConfig& config) {
  const auto fire = aggregate_observations(field0.grid(), obs.fire);
  const auto nonfire = aggregate_observations(field0.grid(), obs.nonfire);
  return iterate(field0, fire, nonfire, obs.hull, config);
}

MultigridResult multigrid_estimate(const FireArrivalField& initial, const ObservationSet& obs,
                                   const EstimatorConfig& config) {
  return multigrid_estimate(initial.grid(), {initial.values().begin(), initial.values().end()}, obs,
                            config);
}

MultigridResult multigrid_estimate(const Grid& eval, std::vector<double> fine,
                                   const ObservationSet& obs, const EstimatorConfig& config) {
  config.validate();
  if (fine.size() != eval.size()) throw std::invalid_argument("initial field size mismatch");
  MultigridResult res;
  if (!config.use_multigrid) {
    std::vector<double> rd;
    fine = iterate_values(eval, std::move(fine), aggregate_observations(eval, obs.fire),
                          aggregate_observations(eval, obs.nonfire), obs.hull, config, rd);
    for (std::size_t i = 0; i < rd.size(); ++i) res.history.push_back({i + 1, eval.spacing(), rd[i]});
    res.field = FireArrivalField::clamped(eval, std::move(fine));
    return res;
  }
  std::size_t level = 0;
  for (double s : config.multigrid.spacings()) {
    const bool at_eval = std::abs(s - eval.spacing()) <= 1e-9 * eval.spacing();
    const Grid g = at_eval ? eval : build_grid(eval.domain(), s);
    EstimatorConfig level_config = config;
    if (config.level_passes > 0 && !at_eval) level_config.max_iter = config.level_passes;
    // The kernel width is fixed in meters; coarse levels use fewer cells.
    level_config.kernel_sigma_cells = config.kernel_sigma_cells * eval.spacing() / g.spacing();
    std::vector<double> rd;
    const std::vector<double> coarse =
        iterate_values(g, resample_values(eval, fine, g), aggregate_observations(g, obs.fire),
                       aggregate_observations(g, obs.nonfire), obs.hull, level_config, rd);
    std::vector<double> next = resample_values(g, coarse, eval);
    const double change = relative_difference(next, fine);
    res.history.push_back({++level, s, change});
    fine = std::move(next);
    if (change < config.rd_threshold) break;
  }
  res.field = FireArrivalField::clamped(eval, std::move(fine));
  return res;
}

AssimilationResult assimilate(const FireArrivalField& forecast, const std::vector<Detection>& dets,
                              const LikelihoodParams& params, const EstimatorConfig& config,
                              const AlphaFunction& alpha_override) {
  config.validate();
  const Grid& g = forecast.grid();
  const SnappedDetections snapped = snap_detections(g, dets);
  const DetectionModel model(params, g);
  AssimilationResult res;
  ObservationSet obs;
  std::vector<NodeConstraint> fire_cs;
  std::vector<NodeConstraint> nonfire_cs;
  SnappedDetections fire;
  SnappedDetections nonfire;
  fire.grid = nonfire.grid = g;
  std::vector<double> fire_alpha;
  std::vector<double> nonfire_alpha;
  for (std::size_t k = 0; k < snapped.size(); ++k) {
    const Detection& d = snapped.detections[k];
    const std::size_t node = snapped.node[k];
    double alpha = 0.0;
    if (alpha_override) {
      alpha = alpha_override(forecast, d, node);
    } else if (config.alpha_mode == AlphaMode::FullTrust) {
      alpha = 0.0;
    } else if (d.kind == DetectionKind::Fire) {
      alpha = model.detection(forecast, node, d.time);
    } else {
      alpha = model.nondetection(forecast, node, d.time);
    }
    alpha = std::clamp(alpha, 0.0, 1.0);
    res.alpha.push_back(alpha);
    SnappedDetections& bucket = d.kind == DetectionKind::Fire ? fire : nonfire;
    if (d.kind != DetectionKind::Fire && !is_nonfire(d.kind)) continue;
    bucket.detections.push_back(d);
    bucket.node.push_back(node);
    bucket.displacement.push_back(snapped.displacement[k]);
    (d.kind == DetectionKind::Fire ? fire_alpha : nonfire_alpha).push_back(alpha);
    if (d.kind == DetectionKind::Fire) obs.fire.push_back({d.pos, d.time, alpha, 1});
  }
  fire_cs = per_detection_constraints(fire, fire_alpha, {});
  nonfire_cs = per_detection_constraints(nonfire, nonfire_alpha, {});
  const std::vector<PlanarPoint> hull = fire_hull(obs.fire, g.projection());
  IterateResult r = iterate(forecast, fire_cs, nonfire_cs, hull, config);
  res.analysis = std::move(r.field);
  res.rd = std::move(r.rd);
  return res;
}

}  // namespace firefront
