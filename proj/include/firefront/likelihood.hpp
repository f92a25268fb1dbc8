#pragma once

#include <cstddef>

#include "firefront/detection.hpp"
#include "firefront/grid.hpp"
#include "firefront/kernel.hpp"

namespace firefront {

/// Parameters of the satellite detection model. Times in hours, lengths in meters.
struct LikelihoodParams {
  double sigma_geo_m = 333.0;  ///< geolocation standard deviation
  double c_decay_h = 10.0;     ///< e-folding time of the fire's heat output
  double p_false = 0.05;       ///< detection probability of a cold pixel
  double p_anchor = 0.3;       ///< detection probability `t_anchor_h` after arrival
  double t_anchor_h = 24.0;
  double l_window_h = 6.0;  ///< window before an overpass in which arrival is reported

  /// Throws std::invalid_argument when the parameters are inconsistent.
  void validate() const;
  double b() const;
  double a() const;
};

/// Heat proxy: 0 before arrival, exp(-lag / c) after. Times in days, c in hours.
double burn_heat(double t_obs, double t_arrival, double c_decay_h);

/// Offset of the logistic curve so that zero heat gives `p_false`.
double solve_b(double p_false);
/// Slope of the logistic curve so that heat exp(-t_anchor / c) gives `p_anchor`.
double solve_a(double p_anchor, double t_anchor_h, double b, double c_decay_h);
/// Logistic detection probability 1 / (1 + exp(-a h + b)).
double detection_probability(double h, double a, double b);
/// Isotropic bivariate normal density at squared offset `offset_sq` (m^2).
double geolocation_density(double offset_sq, double sigma_geo_m);

/// Detection model evaluated on a fixed grid: caches a, b and the kernel.
class DetectionModel {
 public:
  DetectionModel(const LikelihoodParams& params, const Grid& grid);

  const LikelihoodParams& params() const { return params_; }
  double a() const { return a_; }
  double b() const { return b_; }
  const GaussianKernel& kernel() const { return kernel_; }

  /// Geolocation-smoothed heat at `node` for an overpass at `t_obs`.
  double smoothed_heat(const FireArrivalField& field, std::size_t node, double t_obs) const;
  double detection(const FireArrivalField& field, std::size_t node, double t_obs) const;
  double nondetection(const FireArrivalField& field, std::size_t node, double t_obs) const;
  /// Sum of log p(d=1) over fire detections and log p(d=0) over non-fire ones.
  double log_likelihood(const FireArrivalField& field, const SnappedDetections& dets) const;

 private:
  LikelihoodParams params_;
  double a_;
  double b_;
  GaussianKernel kernel_;
};

double smoothed_detection_likelihood(const FireArrivalField& field, std::size_t node,
                                     double t_obs, const LikelihoodParams& params);
double nondetection_likelihood(const FireArrivalField& field, std::size_t node, double t_obs,
                               const LikelihoodParams& params);
double dataset_log_likelihood(const FireArrivalField& field, const SnappedDetections& dets,
                              const LikelihoodParams& params);

/// (weight / 2) * <L d, d> with d = field - reference and L the negative
/// 5-point Laplacian (zero outside the grid), scaled by 1 / spacing^2.
double smoothness_penalty(const FireArrivalField& field, const FireArrivalField& reference,
                          double weight);

}  // namespace firefront
