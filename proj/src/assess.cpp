#include "firefront/assess.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "firefront/hull.hpp"
#include "firefront/ros.hpp"

namespace firefront {

namespace {

void require_same(const Grid& a, const Grid& b) {
  if (!a.same_geometry(b)) throw std::invalid_argument("masks or fields are on different grids");
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

BurnMask BurnMask::from_field(const FireArrivalField& field, double t_ref) {
  BurnMask m{field.grid(), std::vector<bool>(field.size())};
  for (std::size_t k = 0; k < field.size(); ++k) m.burned[k] = field[k] <= t_ref;
  return m;
}

BurnMask BurnMask::from_polygon(const Grid& grid, std::span<const PlanarPoint> polygon) {
  BurnMask m{grid, std::vector<bool>(grid.size())};
  for (std::size_t k = 0; k < grid.size(); ++k) m.burned[k] = point_in_polygon(grid.node_xy(k), polygon);
  return m;
}

std::size_t BurnMask::count() const {
  std::size_t c = 0;
  for (bool b : burned) c += b ? 1 : 0;
  return c;
}

std::vector<double> fire_area_series(const FireArrivalField& field, std::span<const double> times) {
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) {
    std::size_t c = 0;
    for (double v : field.values()) c += v <= t ? 1 : 0;
    out.push_back(static_cast<double>(c));
  }
  return out;
}

double rge(std::span<const double> estimated, std::span<const double> ground) {
  if (estimated.size() != ground.size()) throw std::invalid_argument("rge: series lengths differ");
  const double g = norm2(ground);
  if (!(g > 0.0)) throw std::invalid_argument("rge: ground-truth areas are all zero");
  double s = 0.0;
  for (std::size_t i = 0; i < ground.size(); ++i) s += (estimated[i] - ground[i]) * (estimated[i] - ground[i]);
  return std::sqrt(s) / g;
}

MoeResult moe(const BurnMask& observed, const BurnMask& predicted) {
  require_same(observed.grid, predicted.grid);
  MoeResult r;
  for (std::size_t k = 0; k < observed.burned.size(); ++k) {
    const bool o = observed.burned[k];
    const bool p = predicted.burned[k];
    r.observed += o;
    r.predicted += p;
    r.overlap += o && p;
    if (o && !p) r.false_negative.push_back(k);
    if (p && !o) r.false_positive.push_back(k);
  }
  if (r.observed == 0) throw std::invalid_argument("moe: observed burn area is empty");
  if (r.predicted == 0) throw std::invalid_argument("moe: predicted burn area is empty");
  r.x = static_cast<double>(r.overlap) / static_cast<double>(r.observed);
  r.y = static_cast<double>(r.overlap) / static_cast<double>(r.predicted);
  return r;
}

double sorenson(const BurnMask& a, const BurnMask& b) {
  require_same(a.grid, b.grid);
  std::size_t na = 0;
  std::size_t nb = 0;
  std::size_t both = 0;
  for (std::size_t k = 0; k < a.burned.size(); ++k) {
    na += a.burned[k];
    nb += b.burned[k];
    both += a.burned[k] && b.burned[k];
  }
  if (na + nb == 0) return 1.0;
  return 2.0 * static_cast<double>(both) / static_cast<double>(na + nb);
}

double mean_sorenson(std::span<const double> scores) {
  if (scores.empty()) throw std::invalid_argument("mean_sorenson: no scores");
  double s = 0.0;
  for (double v : scores) s += v;
  return s / static_cast<double>(scores.size());
}

double relative_error(const FireArrivalField& truth, const FireArrivalField& estimate) {
  require_same(truth.grid(), estimate.grid());
  const double t = norm2(truth.values());
  if (!(t > 0.0)) throw std::invalid_argument("relative_error: truth has zero norm");
  double s = 0.0;
  for (std::size_t k = 0; k < truth.size(); ++k) s += (truth[k] - estimate[k]) * (truth[k] - estimate[k]);
  return std::sqrt(s) / t;
}

double wrap_angle(double a) {
  constexpr double pi = std::numbers::pi;
  double w = std::remainder(a, 2.0 * pi);
  if (w <= -pi) w += 2.0 * pi;
  return w;
}

RosDirectionStats ros_direction_stats(std::span<const double> ros_t, std::span<const double> theta_t,
                                      std::span<const double> ros_e, std::span<const double> theta_e,
                                      const std::vector<bool>& mask) {
  const std::size_t n = mask.size();
  if (ros_t.size() != n || theta_t.size() != n || ros_e.size() != n || theta_e.size() != n) {
    throw std::invalid_argument("ros_direction_stats: size mismatch");
  }
  Moments dr;
  Moments dd;
  for (std::size_t k = 0; k < n; ++k) {
    if (!mask[k]) continue;
    dr.push(ros_e[k] - ros_t[k]);
    dd.push(wrap_angle(theta_e[k] - theta_t[k]));
  }
  if (dr.count == 0.0) throw std::invalid_argument("ros_direction_stats: empty mask");
  RosDirectionStats s;
  s.mrd = dr.mean;
  s.srd = std::sqrt(dr.variance());
  s.mdd = dd.mean;
  s.sdd = std::sqrt(dd.variance());
  s.cells = static_cast<std::size_t>(dr.count);
  return s;
}

AssessmentReport assess_fields(const FireArrivalField& truth, const FireArrivalField& estimate,
                               double t_ref, std::span<const double> times, double ros_cutoff_mps) {
  require_same(truth.grid(), estimate.grid());
  AssessmentReport r;
  r.t_ref = t_ref;
  r.spacing_m = truth.grid().spacing();
  const BurnMask obs = BurnMask::from_field(truth, t_ref);
  const BurnMask pred = BurnMask::from_field(estimate, t_ref);
  if (obs.count() > 0 && pred.count() > 0) {
    const MoeResult m = moe(obs, pred);
    r.moe_x = m.x;
    r.moe_y = m.y;
  }
  r.moe_norm = std::hypot(r.moe_x, r.moe_y);
  r.sorenson = sorenson(obs, pred);
  const auto ae = fire_area_series(estimate, times);
  const auto ag = fire_area_series(truth, times);
  double ag_norm = 0.0;
  for (double a : ag) ag_norm += a;
  r.rge = ag_norm > 0.0 ? rge(ae, ag) : 0.0;
  r.rel_error = relative_error(truth, estimate);

  const RosField rt = ros_field(truth, ros_cutoff_mps);
  const RosField re = ros_field(estimate, ros_cutoff_mps);
  const double t_end = truth.grid().domain().t_end;
  std::vector<bool> joint(truth.size());
  bool any = false;
  for (std::size_t k = 0; k < truth.size(); ++k) {
    joint[k] = truth[k] < t_end && estimate[k] < t_end && !rt.masked[k] && !re.masked[k];
    any = any || joint[k];
  }
  if (any) {
    const RosDirectionStats s = ros_direction_stats(rt.ros, rt.theta, re.ros, re.theta, joint);
    r.mrd = s.mrd;
    r.srd = s.srd;
    r.mdd = s.mdd;
    r.sdd = s.sdd;
  }
  return r;
}

std::vector<double> classification(const BurnMask& observed, const BurnMask& predicted) {
  require_same(observed.grid, predicted.grid);
  std::vector<double> out(observed.burned.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const bool o = observed.burned[k];
    const bool p = predicted.burned[k];
    out[k] = o && p ? 1.0 : (o ? 2.0 : (p ? 3.0 : 0.0));
  }
  return out;
}

}  // namespace firefront
