#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "firefront/detection.hpp"
#include "firefront/grid.hpp"
#include "firefront/likelihood.hpp"
#include "firefront/spline.hpp"

namespace firefront {

enum class AlphaMode {
  FullTrust,   ///< alpha = 0: observed nodes take the observed time
  Likelihood,  ///< alpha from the detection model evaluated on the forecast
};

struct MultigridSchedule {
  double start_spacing_m = 2000.0;
  double shrink = 0.8;
  double min_spacing_m = 250.0;

  /// start, start*shrink, ... clamped below at min_spacing (which ends the list).
  std::vector<double> spacings() const;
};

struct EstimatorConfig {
  AlphaMode alpha_mode = AlphaMode::FullTrust;
  /// Smoothing width in evaluation-grid cells (the same width in meters on
  /// every multigrid level).
  double kernel_sigma_cells = 2.0;
  double rd_threshold = 1e-3;
  std::size_t max_iter = 20;
  MultigridSchedule multigrid{};
  bool use_multigrid = true;
  /// Passes per coarse multigrid level; 0 iterates each level to convergence.
  std::size_t level_passes = 1;
  bool use_nonfire = false;

  void validate() const;
};

/// A point observation with its update weight. Fire observations pull the
/// field toward `time`; non-fire ones toward the end of the time window.
struct Observation {
  GeoPoint pos{};
  double time = 0.0;
  double alpha = 0.0;             ///< per-pass retention of the old value, in [0, 1]
  std::size_t multiplicity = 1;  ///< number of paths through the observation
};

/// Observations collapsed onto grid nodes: new = factor * (old - target) + target.
struct NodeConstraint {
  std::size_t node = 0;
  double target = 0.0;
  double factor = 0.0;
};

/// Snaps observations to `grid` and merges those sharing a node: the target
/// is their mean time and the factor the product of alpha^multiplicity.
/// Observations outside the domain are skipped. Sorted by node.
std::vector<NodeConstraint> aggregate_observations(const Grid& grid,
                                                   std::span<const Observation> obs);

/// Everything the iteration consumes besides the field.
struct ObservationSet {
  std::vector<Observation> fire;
  std::vector<Observation> nonfire;
  /// Convex hull of the fire detections in the domain's planar frame; empty
  /// when degenerate, which disables the non-fire constraint.
  std::vector<PlanarPoint> hull;
};

/// Hull of the fire observations' positions, or empty (with a warning flag)
/// when there are fewer than 3 non-collinear points.
std::vector<PlanarPoint> fire_hull(std::span<const Observation> fire,
                                   const LocalProjection& proj);

/// Nearest-sample time plus distance / v_ref, before clamping.
std::vector<double> initial_estimate_values(std::span<const PathPoint> samples, const Grid& grid,
                                            double v_ref_mps);
/// Nearest-sample time plus distance / v_ref, clamped to the time window.
FireArrivalField initial_estimate(std::span<const PathPoint> samples, const Grid& grid,
                                  double v_ref_mps);
/// Median edge rate of spread of the tree (m/s), or `fallback_mps` without edges.
double median_edge_ros(const PathSet& paths, double fallback_mps);
/// Samples are the reachable path vertices; v_ref is the median edge rate of
/// spread, or `fallback_ros_mps` when the set has no edges.
FireArrivalField initial_estimate(const PathSet& paths, const Grid& grid,
                                  double fallback_ros_mps = 0.05);

FireArrivalField update_at_detections(const FireArrivalField& field,
                                      std::span<const NodeConstraint> constraints);
/// Per-detection form; `multiplicity` may be empty (all ones).
FireArrivalField update_at_detections(const FireArrivalField& field,
                                      const SnappedDetections& fire,
                                      std::span<const double> alpha,
                                      std::span<const std::size_t> multiplicity = {});

FireArrivalField gaussian_smooth(const FireArrivalField& field, double sigma_cells);

/// Raises non-fire nodes outside `hull` toward t_end and spreads the raise
/// with one Gaussian pass. Values never decrease. An empty hull is a no-op.
FireArrivalField apply_nonfire(const FireArrivalField& field,
                               std::span<const NodeConstraint> nonfire,
                               std::span<const PlanarPoint> hull, double sigma_cells);
FireArrivalField apply_nonfire(const FireArrivalField& field, const SnappedDetections& nonfire,
                               std::span<const PlanarPoint> hull, std::span<const double> alpha,
                               double sigma_cells);

struct RdRecord {
  std::size_t iter = 0;
  double spacing_m = 0.0;
  double rd = 0.0;
};

struct IterateResult {
  FireArrivalField field;
  std::vector<double> rd;
};

/// Relative change ||a - b|| / ||b||.
double relative_difference(std::span<const double> a, std::span<const double> b);

/// Update, smooth and (optionally) apply non-fire until RD < threshold or max_iter.
IterateResult iterate(const FireArrivalField& field0, std::span<const NodeConstraint> fire,
                      std::span<const NodeConstraint> nonfire,
                      std::span<const PlanarPoint> hull, const EstimatorConfig& config);
IterateResult iterate(const FireArrivalField& field0, const ObservationSet& obs,
                      const EstimatorConfig& config);

struct MultigridResult {
  FireArrivalField field;
  std::vector<RdRecord> history;
};

/// Coarse-to-fine estimation onto `initial`'s grid: each level resamples the
/// current estimate, iterates against the re-snapped observations and maps
/// the result back to the evaluation grid.
MultigridResult multigrid_estimate(const FireArrivalField& initial, const ObservationSet& obs,
                                   const EstimatorConfig& config);
/// Same, starting from unclamped values on `eval`. Working values may leave
/// the time window between passes (so the cap at t_end does not erode under
/// smoothing); only the returned field is clamped.
MultigridResult multigrid_estimate(const Grid& eval, std::vector<double> initial,
                                   const ObservationSet& obs, const EstimatorConfig& config);

/// Returns the retention weight for a detection given the forecast.
using AlphaFunction =
    std::function<double(const FireArrivalField& forecast, const Detection& det, std::size_t node)>;

struct AssimilationResult {
  FireArrivalField analysis;
  std::vector<double> rd;
  std::vector<double> alpha;  ///< per input detection (fire then non-fire order of input)
};

/// Likelihood-weighted blending of detections into a forecast. Fire detections
/// use alpha = detection probability under the forecast and non-fire ones the
/// non-detection probability, unless `alpha_override` is given.
AssimilationResult assimilate(const FireArrivalField& forecast, const std::vector<Detection>& dets,
                              const LikelihoodParams& params, const EstimatorConfig& config,
                              const AlphaFunction& alpha_override = {});

}  // namespace firefront
