#include "firefront/likelihood.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace firefront {

void LikelihoodParams::validate() const {
  if (!(sigma_geo_m > 0.0)) throw std::invalid_argument("sigma_geo_m must be positive");
  if (!(c_decay_h > 0.0)) throw std::invalid_argument("c_decay_h must be positive");
  if (!(t_anchor_h > 0.0)) throw std::invalid_argument("t_anchor_h must be positive");
  if (!(l_window_h > 0.0)) throw std::invalid_argument("l_window_h must be positive");
  if (!(p_false > 0.0 && p_false < 0.5)) throw std::invalid_argument("p_false must be in (0, 0.5)");
  if (!(p_anchor > p_false && p_anchor < 1.0)) {
    throw std::invalid_argument("p_anchor must be in (p_false, 1)");
  }
  (void)a();
}

double LikelihoodParams::b() const { return solve_b(p_false); }

double LikelihoodParams::a() const { return solve_a(p_anchor, t_anchor_h, b(), c_decay_h); }

double burn_heat(double t_obs, double t_arrival, double c_decay_h) {
  if (t_obs < t_arrival) return 0.0;
  return std::exp(-(t_obs - t_arrival) * kHoursPerDay / c_decay_h);
}

double solve_b(double p_false) {
  if (!(p_false > 0.0 && p_false < 1.0)) throw std::invalid_argument("p_false must be in (0, 1)");
  return std::log((1.0 - p_false) / p_false);
}

double solve_a(double p_anchor, double t_anchor_h, double b, double c_decay_h) {
  if (!(p_anchor > 0.0 && p_anchor < 1.0)) {
    throw std::invalid_argument("p_anchor must be in (0, 1)");
  }
  if (!(c_decay_h > 0.0) || !(t_anchor_h >= 0.0)) {
    throw std::invalid_argument("invalid anchor time or decay");
  }
  const double h = std::exp(-t_anchor_h / c_decay_h);
  if (!(h > 0.0)) throw std::invalid_argument("anchor heat underflows to zero");
  const double a = (std::log(p_anchor / (1.0 - p_anchor)) + b) / h;
  if (!(a > 0.0)) {
    throw std::invalid_argument("detection slope a must be positive; p_anchor too small for p_false");
  }
  return a;
}

double detection_probability(double h, double a, double b) {
  return 1.0 / (1.0 + std::exp(-a * h + b));
}

double geolocation_density(double offset_sq, double sigma_geo_m) {
  if (!(sigma_geo_m > 0.0)) throw std::invalid_argument("sigma_geo_m must be positive");
  const double s2 = sigma_geo_m * sigma_geo_m;
  return std::exp(-0.5 * offset_sq / s2) / (2.0 * std::numbers::pi * s2);
}

DetectionModel::DetectionModel(const LikelihoodParams& params, const Grid& grid)
    : params_(params),
      a_((params.validate(), params.a())),
      b_(params.b()),
      kernel_(params.sigma_geo_m / grid.spacing()) {}

double DetectionModel::smoothed_heat(const FireArrivalField& field, std::size_t node,
                                     double t_obs) const {
  const Grid& g = field.grid();
  const auto vals = field.values();
  const double c = params_.c_decay_h;
  return kernel_average(g.nx(), g.ny(), g.col(node), g.row(node), kernel_,
                        [&](std::size_t m) { return burn_heat(t_obs, vals[m], c); });
}

double DetectionModel::detection(const FireArrivalField& field, std::size_t node,
                                 double t_obs) const {
  return detection_probability(smoothed_heat(field, node, t_obs), a_, b_);
}

double DetectionModel::nondetection(const FireArrivalField& field, std::size_t node,
                                    double t_obs) const {
  // 1 - logistic(z) = logistic(-z)
  const double z = a_ * smoothed_heat(field, node, t_obs) - b_;
  return 1.0 / (1.0 + std::exp(z));
}

double DetectionModel::log_likelihood(const FireArrivalField& field,
                                      const SnappedDetections& dets) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < dets.size(); ++k) {
    const Detection& d = dets.detections[k];
    if (d.kind == DetectionKind::Fire) {
      sum += std::log(detection(field, dets.node[k], d.time));
    } else if (is_nonfire(d.kind)) {
      sum += std::log(nondetection(field, dets.node[k], d.time));
    }
  }
  return sum;
}

double smoothed_detection_likelihood(const FireArrivalField& field, std::size_t node,
                                     double t_obs, const LikelihoodParams& params) {
  return DetectionModel(params, field.grid()).detection(field, node, t_obs);
}

double nondetection_likelihood(const FireArrivalField& field, std::size_t node, double t_obs,
                               const LikelihoodParams& params) {
  return DetectionModel(params, field.grid()).nondetection(field, node, t_obs);
}

double dataset_log_likelihood(const FireArrivalField& field, const SnappedDetections& dets,
                              const LikelihoodParams& params) {
  if (dets.size() == 0) return 0.0;
  return DetectionModel(params, field.grid()).log_likelihood(field, dets);
}

double smoothness_penalty(const FireArrivalField& field, const FireArrivalField& reference,
                          double weight) {
  const Grid& g = field.grid();
  if (!g.same_geometry(reference.grid())) {
    throw std::invalid_argument("smoothness_penalty: grid mismatch");
  }
  const std::size_t nx = g.nx();
  const std::size_t ny = g.ny();
  std::vector<double> d(g.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = field[k] - reference[k];
  auto at = [&](long i, long j) {
    if (i < 0 || j < 0 || i >= static_cast<long>(nx) || j >= static_cast<long>(ny)) return 0.0;
    return d[static_cast<std::size_t>(j) * nx + static_cast<std::size_t>(i)];
  };
  const double h2 = g.spacing() * g.spacing();
  double sum = 0.0;
  for (long j = 0; j < static_cast<long>(ny); ++j) {
    for (long i = 0; i < static_cast<long>(nx); ++i) {
      const double c = at(i, j);
      const double neg_lap = (4.0 * c - at(i - 1, j) - at(i + 1, j) - at(i, j - 1) - at(i, j + 1)) / h2;
      sum += neg_lap * c;
    }
  }
  return 0.5 * weight * sum;
}

}  // namespace firefront
