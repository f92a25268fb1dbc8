#pragma once

#include <span>
#include <vector>

#include "firefront/grid.hpp"
#include "firefront/ros.hpp"

namespace firefront {

/// Relative rate of spread as a strictly decreasing function of fuel moisture
/// (fraction). Interpolated with a monotone piecewise cubic.
class BurnCurve {
 public:
  struct Sample {
    double fmc = 0.0;
    double ros_rel = 0.0;
  };

  BurnCurve() : BurnCurve(default_samples()) {}
  explicit BurnCurve(std::vector<Sample> samples);

  static std::vector<Sample> default_samples();

  const std::vector<Sample>& samples() const { return samples_; }
  double fmc_min() const { return samples_.front().fmc; }
  double fmc_max() const { return samples_.back().fmc; }
  double ros_min() const { return samples_.back().ros_rel; }
  double ros_max() const { return samples_.front().ros_rel; }

  /// Throws std::out_of_range outside [fmc_min, fmc_max].
  double operator()(double fmc) const;
  /// Moisture at which the curve equals `ros_rel`; throws std::out_of_range
  /// outside [ros_min, ros_max].
  double invert(double ros_rel) const;

 private:
  std::vector<Sample> samples_;
  std::vector<double> slope_;  // derivative at each sample
};

/// Nodes burned (< t_end) in both fields.
std::vector<bool> overlap_mask(const FireArrivalField& a, const FireArrivalField& b);

struct RosDifference {
  double mean_est = 0.0;
  double mean_fcst = 0.0;
  double delta = 0.0;  ///< mean_fcst - mean_est
  std::size_t cells = 0;
};

/// Means over cells in `mask`, unmasked in both fields and below the cutoff.
/// Throws std::invalid_argument when no cell qualifies.
RosDifference mean_ros_diff(const RosField& est, const RosField& fcst, const std::vector<bool>& mask,
                            double cutoff_mps = 2.0);

struct FmcAdjustment {
  double delta = 0.0;
  bool conflict = false;      ///< area and ROS disagree; no change
  bool ratio_clamped = false;  ///< target outside the curve's range
  bool step_clamped = false;   ///< limited to max_step
};

/// Moisture change that brings the forecast rate of spread to the estimated
/// one; zero when the area and ROS discrepancies point in opposite directions.
FmcAdjustment fmc_adjustment(double est_area, double fcst_area, double mean_est_ros,
                             double mean_fcst_ros, const BurnCurve& curve, double current_fmc,
                             double max_step = 0.01);

}  // namespace firefront
