#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "firefront/grid.hpp"

namespace firefront {

/// Burned flag per node at a reference time.
struct BurnMask {
  Grid grid;
  std::vector<bool> burned;

  /// {T <= t_ref}.
  static BurnMask from_field(const FireArrivalField& field, double t_ref);
  /// Nodes inside the polygon (domain planar frame; boundary counts as inside).
  static BurnMask from_polygon(const Grid& grid, std::span<const PlanarPoint> polygon);
  std::size_t count() const;
};

/// Burned-node counts {T <= t} for each time.
std::vector<double> fire_area_series(const FireArrivalField& field, std::span<const double> times);

/// ||A_e - A_g|| / ||A_g||.
double rge(std::span<const double> estimated, std::span<const double> ground);

struct MoeResult {
  double x = 0.0;  ///< overlap / observed
  double y = 0.0;  ///< overlap / predicted
  std::size_t overlap = 0;
  std::size_t observed = 0;
  std::size_t predicted = 0;
  std::vector<std::size_t> false_negative;  ///< observed, not predicted
  std::vector<std::size_t> false_positive;  ///< predicted, not observed
};

MoeResult moe(const BurnMask& observed, const BurnMask& predicted);

/// 2 |A and B| / (|A| + |B|); 1 when both are empty.
double sorenson(const BurnMask& a, const BurnMask& b);
double mean_sorenson(std::span<const double> scores);

/// ||T - T_e|| / ||T|| over all nodes.
double relative_error(const FireArrivalField& truth, const FireArrivalField& estimate);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double a);

struct RosDirectionStats {
  double mrd = 0.0;  ///< mean ROS difference (estimate - truth), m/s
  double srd = 0.0;  ///< its standard deviation
  double mdd = 0.0;  ///< mean wrapped direction difference, radians
  double sdd = 0.0;
  std::size_t cells = 0;
};

RosDirectionStats ros_direction_stats(std::span<const double> ros_t, std::span<const double> theta_t,
                                      std::span<const double> ros_e, std::span<const double> theta_e,
                                      const std::vector<bool>& mask);

struct AssessmentReport {
  double moe_x = 0.0;
  double moe_y = 0.0;
  double moe_norm = 0.0;
  double sorenson = 0.0;
  double rge = 0.0;
  std::optional<double> rel_error;
  double mrd = 0.0;
  double srd = 0.0;
  double mdd = 0.0;
  double sdd = 0.0;
  double t_ref = 0.0;
  double spacing_m = 0.0;
};

/// Compares an estimate against a truth field at `t_ref`; the growth error
/// uses `times`. ROS statistics cover the region burned in both fields.
AssessmentReport assess_fields(const FireArrivalField& truth, const FireArrivalField& estimate,
                               double t_ref, std::span<const double> times,
                               double ros_cutoff_mps = 2.0);

/// Per-node class: 0 unburned in both, 1 overlap, 2 false negative, 3 false positive.
std::vector<double> classification(const BurnMask& observed, const BurnMask& predicted);

}  // namespace firefront
