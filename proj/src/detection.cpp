#include "firefront/detection.hpp"

namespace firefront {

namespace {

template <class Pred>
SnappedDetections select(const SnappedDetections& s, Pred keep) {
  SnappedDetections out;
  out.grid = s.grid;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!keep(s.detections[k].kind)) continue;
    out.detections.push_back(s.detections[k]);
    out.node.push_back(s.node[k]);
    out.displacement.push_back(s.displacement[k]);
  }
  return out;
}

}  // namespace

SnappedDetections SnappedDetections::fire_only() const {
  return select(*this, [](DetectionKind k) { return k == DetectionKind::Fire; });
}

SnappedDetections SnappedDetections::nonfire_only() const {
  return select(*this, [](DetectionKind k) { return is_nonfire(k); });
}

SnappedDetections snap_detections(const Grid& grid, const std::vector<Detection>& dets) {
  SnappedDetections out;
  out.grid = grid;
  const FireDomain& dom = grid.domain();
  const LocalProjection& proj = grid.projection();
  for (const Detection& d : dets) {
    if (!dom.contains(d.pos) || !dom.contains_time(d.time)) {
      ++out.dropped;
      continue;
    }
    const PlanarPoint p = proj.forward(d.pos);
    const std::size_t k = grid.nearest_node(p);
    out.detections.push_back(d);
    out.node.push_back(k);
    out.displacement.push_back(planar_distance(p, grid.node_xy(k)));
  }
  return out;
}

std::vector<Detection> filter_confidence(const std::vector<Detection>& dets, int threshold) {
  std::vector<Detection> out;
  out.reserve(dets.size());
  for (const Detection& d : dets) {
    if (d.kind != DetectionKind::Fire || d.confidence >= threshold) out.push_back(d);
  }
  return out;
}

}  // namespace firefront
