#include "firefront/fmc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace firefront {

std::vector<BurnCurve::Sample> BurnCurve::default_samples() {
  return {{0.02, 1.4}, {0.05, 1.0}, {0.10, 0.6}, {0.20, 0.25}, {0.30, 0.05}};
}

BurnCurve::BurnCurve(std::vector<Sample> samples) : samples_(std::move(samples)) {
  const std::size_t n = samples_.size();
  if (n < 2) throw std::invalid_argument("burn curve needs at least two points");
  for (std::size_t k = 0; k < n; ++k) {
    const Sample& s = samples_[k];
    if (!std::isfinite(s.fmc) || !std::isfinite(s.ros_rel) || s.fmc < 0.0 || s.fmc > 1.0 ||
        !(s.ros_rel > 0.0)) {
      throw std::invalid_argument("burn curve point out of range");
    }
    if (k > 0 && !(s.fmc > samples_[k - 1].fmc && s.ros_rel < samples_[k - 1].ros_rel)) {
      throw std::invalid_argument("burn curve must be strictly decreasing in moisture");
    }
  }
  // Fritsch-Carlson slopes.
  std::vector<double> h(n - 1);
  std::vector<double> secant(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = samples_[k + 1].fmc - samples_[k].fmc;
    secant[k] = (samples_[k + 1].ros_rel - samples_[k].ros_rel) / h[k];
  }
  slope_.assign(n, 0.0);
  slope_[0] = secant[0];
  slope_[n - 1] = secant[n - 2];
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double w1 = 2.0 * h[k] + h[k - 1];
    const double w2 = h[k] + 2.0 * h[k - 1];
    slope_[k] = (w1 + w2) / (w1 / secant[k - 1] + w2 / secant[k]);
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double a = slope_[k] / secant[k];
    const double b = slope_[k + 1] / secant[k];
    const double r = a * a + b * b;
    if (r > 9.0) {
      const double tau = 3.0 / std::sqrt(r);
      slope_[k] = tau * a * secant[k];
      slope_[k + 1] = tau * b * secant[k];
    }
  }
}

double BurnCurve::operator()(double fmc) const {
  if (!(fmc >= fmc_min() && fmc <= fmc_max())) {
    throw std::out_of_range("moisture outside the burn curve");
  }
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), fmc,
                                   [](double v, const Sample& s) { return v < s.fmc; });
  std::size_t k = static_cast<std::size_t>(it - samples_.begin());
  k = std::clamp<std::size_t>(k, 1, samples_.size() - 1) - 1;
  const Sample& a = samples_[k];
  const Sample& b = samples_[k + 1];
  const double h = b.fmc - a.fmc;
  const double t = (fmc - a.fmc) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * a.ros_rel + (t3 - 2 * t2 + t) * h * slope_[k] +
         (-2 * t3 + 3 * t2) * b.ros_rel + (t3 - t2) * h * slope_[k + 1];
}

double BurnCurve::invert(double ros_rel) const {
  if (!(ros_rel >= ros_min() && ros_rel <= ros_max())) {
    throw std::out_of_range("relative ROS outside the burn curve");
  }
  for (const Sample& s : samples_) {
    if (s.ros_rel == ros_rel) return s.fmc;
  }
  double lo = fmc_min();
  double hi = fmc_max();
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((*this)(mid) > ros_rel) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<bool> overlap_mask(const FireArrivalField& a, const FireArrivalField& b) {
  if (!a.grid().same_geometry(b.grid())) throw std::invalid_argument("overlap_mask: grid mismatch");
  const double t_end = a.grid().domain().t_end;
  std::vector<bool> m(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) m[k] = a[k] < t_end && b[k] < t_end;
  return m;
}

RosDifference mean_ros_diff(const RosField& est, const RosField& fcst, const std::vector<bool>& mask,
                            double cutoff_mps) {
  const std::size_t n = mask.size();
  if (est.ros.size() != n || fcst.ros.size() != n) {
    throw std::invalid_argument("mean_ros_diff: size mismatch");
  }
  RosDifference r;
  double se = 0.0;
  double sf = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (!mask[k] || est.masked[k] || fcst.masked[k]) continue;
    if (!(est.ros[k] < cutoff_mps) || !(fcst.ros[k] < cutoff_mps)) continue;
    se += est.ros[k];
    sf += fcst.ros[k];
    ++r.cells;
  }
  if (r.cells == 0) throw std::invalid_argument("mean_ros_diff: empty intersection");
  r.mean_est = se / static_cast<double>(r.cells);
  r.mean_fcst = sf / static_cast<double>(r.cells);
  r.delta = r.mean_fcst - r.mean_est;
  return r;
}

namespace {

int sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

FmcAdjustment fmc_adjustment(double est_area, double fcst_area, double mean_est_ros,
                             double mean_fcst_ros, const BurnCurve& curve, double current_fmc,
                             double max_step) {
  if (!(est_area >= 0.0) || !(fcst_area >= 0.0)) throw std::invalid_argument("areas must be >= 0");
  if (!(mean_est_ros > 0.0) || !(mean_fcst_ros > 0.0)) throw std::invalid_argument("ROS must be > 0");
  if (!(max_step > 0.0)) throw std::invalid_argument("max_step must be positive");
  const double current_ros = curve(current_fmc);  // rejects moisture outside the curve
  FmcAdjustment out;
  if (sign(fcst_area - est_area) != sign(mean_fcst_ros - mean_est_ros)) {
    out.conflict = true;
    return out;
  }
  if (mean_fcst_ros == mean_est_ros) return out;
  double target = current_ros * mean_est_ros / mean_fcst_ros;
  if (target < curve.ros_min() || target > curve.ros_max()) {
    out.ratio_clamped = true;
    target = std::clamp(target, curve.ros_min(), curve.ros_max());
  }
  out.delta = curve.invert(target) - current_fmc;
  if (std::abs(out.delta) > max_step) {
    out.step_clamped = true;
    out.delta = std::copysign(max_step, out.delta);
  }
  return out;
}

}  // namespace firefront
