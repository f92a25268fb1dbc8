#pragma once

#include <cstddef>
#include <vector>

#include "firefront/geo.hpp"
#include "firefront/grid.hpp"

namespace firefront {

enum class DetectionKind { Fire, NonFireLand, NonFireWater, Unknown };

inline bool is_nonfire(DetectionKind k) {
  return k == DetectionKind::NonFireLand || k == DetectionKind::NonFireWater;
}

/// One satellite observation. Time is in decimal days on the domain clock.
struct Detection {
  GeoPoint pos{};
  double time = 0.0;
  DetectionKind kind = DetectionKind::Fire;
  int confidence = 100;

  friend bool operator==(const Detection&, const Detection&) = default;
};

/// Detections mapped onto nodes of a grid. `node[k]` and `displacement[k]`
/// describe `detections[k]`; detections outside the domain are not retained.
struct SnappedDetections {
  Grid grid;
  std::vector<Detection> detections;
  std::vector<std::size_t> node;
  std::vector<double> displacement;  ///< meters
  std::size_t dropped = 0;

  std::size_t size() const { return detections.size(); }
  /// Subset holding only the given kind class.
  SnappedDetections fire_only() const;
  SnappedDetections nonfire_only() const;
};

/// Maps each detection to its nearest node. Detections outside the spatial box
/// or the time window are dropped and counted.
SnappedDetections snap_detections(const Grid& grid, const std::vector<Detection>& dets);

/// Keeps fire detections with confidence >= threshold; other kinds pass through.
std::vector<Detection> filter_confidence(const std::vector<Detection>& dets, int threshold);

}  // namespace firefront
