#include "firefront/ros.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "firefront/parallel.hpp"
#include "firefront/random.hpp"

namespace firefront {

Gradient gradient(const FireArrivalField& field) {
  const Grid& g = field.grid();
  const std::size_t nx = g.nx();
  const std::size_t ny = g.ny();
  const double h = g.spacing();
  Gradient out{std::vector<double>(g.size()), std::vector<double>(g.size())};
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t k = g.index(i, j);
      if (i == 0) {
        out.tx[k] = (field.at(1, j) - field.at(0, j)) / h;
      } else if (i == nx - 1) {
        out.tx[k] = (field.at(i, j) - field.at(i - 1, j)) / h;
      } else {
        out.tx[k] = (field.at(i + 1, j) - field.at(i - 1, j)) / (2.0 * h);
      }
      if (j == 0) {
        out.ty[k] = (field.at(i, 1) - field.at(i, 0)) / h;
      } else if (j == ny - 1) {
        out.ty[k] = (field.at(i, j) - field.at(i, j - 1)) / h;
      } else {
        out.ty[k] = (field.at(i, j + 1) - field.at(i, j - 1)) / (2.0 * h);
      }
    }
  }
  return out;
}

RosField ros_field(const FireArrivalField& field, double cutoff_mps, double seconds_per_unit) {
  Gradient gr = gradient(field);
  RosField r;
  r.grid = field.grid();
  const std::size_t n = r.grid.size();
  r.ros.assign(n, 0.0);
  r.theta.assign(n, 0.0);
  r.masked.assign(n, true);
  for (std::size_t k = 0; k < n; ++k) {
    const double mag = std::hypot(gr.tx[k], gr.ty[k]);
    r.theta[k] = std::atan2(gr.ty[k], gr.tx[k]);
    if (mag < 1e-12) continue;
    const double ros = 1.0 / (mag * seconds_per_unit);
    if (ros > cutoff_mps) continue;
    r.ros[k] = ros;
    r.masked[k] = false;
  }
  r.tx = std::move(gr.tx);
  r.ty = std::move(gr.ty);
  return r;
}

namespace {

void check_window(double c, double l) {
  if (!(l > 0.0)) throw std::invalid_argument("window length must be positive");
  if (!(c > l)) throw std::invalid_argument("time separation must exceed the window length");
}

}  // namespace

double time_diff_pdf(double t, double t1, double t2, double l) {
  if (!(l > 0.0)) throw std::invalid_argument("window length must be positive");
  const double c = t2 - t1;
  const double u = std::abs(t - c);
  return u >= l ? 0.0 : (l - u) / (l * l);
}

double recip_cdf(double s, double c, double l) {
  check_window(c, l);
  if (s <= 1.0 / (c + l)) return 0.0;
  if (s >= 1.0 / (c - l)) return 1.0;
  // P(S <= s) = P(T >= 1/s).
  const double t = 1.0 / s;
  if (t >= c) {
    const double u = c + l - t;
    return u * u / (2.0 * l * l);
  }
  const double u = t - (c - l);
  return 1.0 - u * u / (2.0 * l * l);
}

double recip_pdf(double s, double c, double l) {
  check_window(c, l);
  if (s <= 1.0 / (c + l) || s >= 1.0 / (c - l)) return 0.0;
  const double t = 1.0 / s;
  return (l - std::abs(t - c)) / (l * l) / (s * s);
}

namespace {

// With x = l / c: c E[S] = 1 + b and c^2 E[S^2] = 1 + a. Kept as excesses over
// one so the variance does not cancel when the window is short.
struct Excess {
  double a = 0.0;
  double b = 0.0;
};

Excess moment_excess(double c, double l) {
  check_window(c, l);
  const double x = l / c;
  const double x2 = x * x;
  Excess e;
  if (x < 0.1) {
    // a = sum_{k>=2} x^(2k-2) / k,  b = sum_{k>=2} x^(2k-2) / (k (2k - 1)).
    double p = x2;
    for (int k = 2; k < 40 && p > 1e-20; ++k, p *= x2) {
      e.a += p / k;
      e.b += p / (k * (2.0 * k - 1.0));
    }
  } else {
    e.a = -std::log1p(-x2) / x2 - 1.0;
    e.b = ((1.0 + x) * std::log1p(x) + (1.0 - x) * std::log1p(-x)) / x2 - 1.0;
  }
  return e;
}

}  // namespace

double expected_s(double c, double l) { return (1.0 + moment_excess(c, l).b) / c; }

double expected_s2(double c, double l) { return (1.0 + moment_excess(c, l).a) / (c * c); }

double var_s(double c, double l) {
  const Excess e = moment_excess(c, l);
  return std::max(0.0, (e.a - e.b * (2.0 + e.b)) / (c * c));
}

double distance_diff_density(double z, double d, double sigma1, double sigma2) {
  const double v = sigma1 * sigma1 + sigma2 * sigma2;
  if (!(v > 0.0)) throw std::invalid_argument("distance noise must be positive");
  return std::exp(-(z - d) * (z - d) / (2.0 * v)) / std::sqrt(2.0 * std::numbers::pi * v);
}

void RosUncertaintyInputs::validate() const {
  if (!(d >= 0.0)) throw std::invalid_argument("distance must be non-negative");
  if (!(sigma1 >= 0.0 && sigma2 >= 0.0)) throw std::invalid_argument("sigmas must be non-negative");
  check_window(c(), l);
}

double var_ros(const RosUncertaintyInputs& in) {
  in.validate();
  const double s2 = in.sigma1 * in.sigma1 + in.sigma2 * in.sigma2;
  // Same as (d^2 + s2) E[S^2] - d^2 E[S]^2 without the cancellation.
  return s2 * expected_s2(in.c(), in.l) + in.d * in.d * var_s(in.c(), in.l);
}

double mean_ros(const RosUncertaintyInputs& in) {
  in.validate();
  return in.d * expected_s(in.c(), in.l);
}

void Moments::push(double x) {
  count += 1.0;
  const double delta = x - mean;
  mean += delta / count;
  m2 += delta * (x - mean);
}

void Moments::merge(const Moments& o) {
  if (o.count == 0.0) return;
  if (count == 0.0) {
    *this = o;
    return;
  }
  const double n = count + o.count;
  const double delta = o.mean - mean;
  mean += delta * o.count / n;
  m2 += o.m2 + delta * delta * count * o.count / n;
  count = n;
}

McRosResult mc_ros_sample(const RosUncertaintyInputs& in, std::uint64_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample count must be positive");
  if (!(in.l > 0.0)) throw std::invalid_argument("window length must be positive");
  constexpr std::size_t kShards = 64;
  std::vector<McRosResult> shards(kShards);
  const double sd = std::sqrt(in.sigma1 * in.sigma1 + in.sigma2 * in.sigma2);
  parallel_for(kShards, [&](std::size_t s) {
    const std::uint64_t begin = n * s / kShards;
    const std::uint64_t end = n * (s + 1) / kShards;
    Rng rng(derive_seed(seed, s));
    McRosResult& r = shards[s];
    for (std::uint64_t q = begin; q < end; ++q) {
      const double dist = in.d + sd * rng.normal();
      double dt = 0.0;
      do {
        const double u1 = in.t1 - in.l * rng.uniform();
        const double u2 = in.t2 - in.l * rng.uniform();
        dt = u2 - u1;
        if (dt <= 0.0) ++r.rejected;
      } while (dt <= 0.0);
      const double sv = 1.0 / dt;
      r.s.push(sv);
      r.s2.push(sv * sv);
      r.r.push(dist * sv);
    }
  });
  McRosResult out;
  for (const McRosResult& r : shards) {
    out.r.merge(r.r);
    out.s.merge(r.s);
    out.s2.merge(r.s2);
    out.rejected += r.rejected;
  }
  return out;
}

}  // namespace firefront
