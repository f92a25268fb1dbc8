#pragma once

#include <cstddef>
#include <vector>

#include "firefront/detection.hpp"
#include "firefront/estimator.hpp"
#include "firefront/graph.hpp"
#include "firefront/spline.hpp"

namespace firefront {

struct EstimateOptions {
  GraphConfig graph{};
  DensifyConfig densify{};
  bool interpolate = true;  ///< add spline points along long path gaps
  EstimatorConfig estimator{};
  int confidence_threshold = 70;
  double fallback_ros_mps = 0.05;
};

struct EstimateResult {
  FireArrivalField field;
  std::vector<RdRecord> history;
  std::size_t fire_detections = 0;
  std::size_t nonfire_detections = 0;
  std::size_t dropped = 0;
  std::size_t inserted = 0;
  std::size_t unreachable = 0;
  std::size_t removed_secondary = 0;
};

/// Full estimation from detections: graph, shortest paths, optional spline
/// densification, initial estimate, then the (multigrid) iteration on `eval`.
EstimateResult estimate_fire_arrival(const std::vector<Detection>& dets, const Grid& eval,
                                     const EstimateOptions& options);

}  // namespace firefront
