#include "firefront/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

namespace firefront {

EstimateResult estimate_fire_arrival(const std::vector<Detection>& dets, const Grid& eval,
                                     const EstimateOptions& options) {
  options.estimator.validate();
  const std::vector<Detection> kept = filter_confidence(dets, options.confidence_threshold);
  const SnappedDetections snapped = snap_detections(eval, kept);
  EstimateResult res;
  res.dropped = snapped.dropped;

  std::vector<GraphVertex> verts;
  ObservationSet obs;
  for (const Detection& d : snapped.detections) {
    if (d.kind == DetectionKind::Fire) {
      verts.push_back({d.pos, d.time});
    } else if (is_nonfire(d.kind)) {
      obs.nonfire.push_back({d.pos, eval.domain().t_end, 0.0, 1});
    }
  }
  if (verts.empty()) throw std::invalid_argument("no fire detections inside the domain");
  res.fire_detections = verts.size();
  res.nonfire_detections = obs.nonfire.size();

  const LocalProjection& proj = eval.projection();
  const DetectionGraph graph = build_detection_graph(verts, proj, options.graph);
  const PathSet paths = shortest_paths(graph, graph.ignition);
  res.unreachable = paths.unreachable().size();
  res.removed_secondary = graph.removed.size();
  const std::vector<std::size_t> mult = paths.multiplicity();

  const FireDomain& dom = eval.domain();
  auto clamp_t = [&](double t) { return std::clamp(t, dom.t_start, dom.t_end); };
  std::vector<PathPoint> samples;
  for (std::size_t v = 0; v < graph.size(); ++v) {
    if (!paths.reachable(v)) continue;
    const GraphVertex& gv = graph.vertices[v];
    obs.fire.push_back({gv.pos, clamp_t(gv.time), 0.0, std::max<std::size_t>(1, mult[v])});
    samples.push_back({gv.pos, clamp_t(gv.time), false});
  }
  if (options.interpolate) {
    for (const auto& path : paths.paths()) {
      if (path.size() < 2) continue;
      std::vector<GraphVertex> pv;
      pv.reserve(path.size());
      for (std::size_t v : path) pv.push_back(graph.vertices[v]);
      for (const PathPoint& q : densify_path(pv, proj, options.densify)) {
        if (!q.inserted || !dom.contains(q.pos)) continue;
        obs.fire.push_back({q.pos, clamp_t(q.time), 0.0, 1});
        samples.push_back({q.pos, clamp_t(q.time), true});
        ++res.inserted;
      }
    }
  }
  // The hull covers the original detections only.
  std::vector<Observation> originals;
  for (const GraphVertex& gv : verts) originals.push_back({gv.pos, gv.time, 0.0, 1});
  obs.hull = fire_hull(originals, proj);

  const double v_ref = median_edge_ros(paths, options.fallback_ros_mps);
  MultigridResult mg = multigrid_estimate(eval, initial_estimate_values(samples, eval, v_ref), obs,
                                          options.estimator);
  res.field = std::move(mg.field);
  res.history = std::move(mg.history);
  return res;
}

}  // namespace firefront
