#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "firefront/graph.hpp"
#include "firefront/random.hpp"
#include "firefront/ros.hpp"
#include "firefront/synth.hpp"

using namespace firefront;

namespace {

const GeoPoint kCenter{39.5, -120.5};

Grid square_grid(std::size_t nodes, double spacing, double t_end) {
  const double extent = static_cast<double>(nodes - 1) * spacing;
  return build_grid(FireDomain::around(kCenter, extent, extent, 0.0, t_end), spacing);
}

template <class F>
double simpson(F f, double a, double b, std::size_t n = 20000) {
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (std::size_t k = 1; k < n; ++k) sum += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return sum * h / 3.0;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("gradient of planar fields") {
  const Grid g = square_grid(11, 100.0, 10.0);
  std::vector<double> v(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const PlanarPoint p = g.node_xy(k);
    v[k] = 5.0 + 2e-3 * p.x - 1e-3 * p.y;
  }
  const Gradient gr = gradient(FireArrivalField(g, v));
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(gr.tx[k] == doctest::Approx(2e-3).epsilon(1e-9));
    CHECK(gr.ty[k] == doctest::Approx(-1e-3).epsilon(1e-9));
  }

  const RosField flat = ros_field(FireArrivalField::constant(g, 3.0));
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(flat.masked[k]);
    CHECK(flat.ros[k] == 0.0);
    CHECK(gradient(FireArrivalField::constant(g, 3.0)).tx[k] == 0.0);
  }
}

TEST_CASE("gradient against a finite-difference oracle") {
  const Grid g = square_grid(81, 25.0, 10.0);
  auto f = [](double x, double y) { return 4.0 + std::sin(x / 3000.0) + std::cos(y / 4000.0); };
  std::vector<double> v(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) v[k] = f(g.node_xy(k).x, g.node_xy(k).y);
  const Gradient gr = gradient(FireArrivalField(g, v));
  const double h = 1e-6 * 1000.0;
  for (std::size_t j = 1; j + 1 < g.ny(); ++j) {
    for (std::size_t i = 1; i + 1 < g.nx(); ++i) {
      const PlanarPoint p = g.node_xy(i, j);
      const double fx = (f(p.x + h, p.y) - f(p.x - h, p.y)) / (2 * h);
      const double fy = (f(p.x, p.y + h) - f(p.x, p.y - h)) / (2 * h);
      const double norm = std::hypot(fx, fy);
      const std::size_t k = g.index(i, j);
      CHECK(std::hypot(gr.tx[k] - fx, gr.ty[k] - fy) / norm < 1e-4);
    }
  }
}

TEST_CASE("rate of spread of cones") {
  // T = sqrt((x - 500)^2 + (y - 500)^2) + 30 with one time unit per second.
  const Grid g = square_grid(101, 10.0, 1000.0);
  std::vector<double> v(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const PlanarPoint p = g.node_xy(k);
    const double x = p.x - g.origin().x;
    const double y = p.y - g.origin().y;
    v[k] = std::hypot(x - 500.0, y - 500.0) + 30.0;
  }
  const RosField r = ros_field(FireArrivalField(g, v), 2.0, 1.0);
  std::size_t checked = 0;
  for (std::size_t j = 1; j + 1 < g.ny(); ++j) {
    for (std::size_t i = 1; i + 1 < g.nx(); ++i) {
      const std::size_t k = g.index(i, j);
      const double x = g.node_xy(k).x - g.origin().x;
      const double y = g.node_xy(k).y - g.origin().y;
      if (std::hypot(x - 500.0, y - 500.0) < 50.0) continue;
      REQUIRE_FALSE(r.masked[k]);
      CHECK(std::abs(r.ros[k] - 1.0) < 0.01);
      ++checked;
    }
  }
  CHECK(checked > 9000);

  for (double ros : {0.01, 0.05, 0.2}) {
    const Grid cg = square_grid(81, 250.0, 30.0);
    const FireArrivalField cone = cone_field(isotropic_cone(kCenter, 0.0, ros), cg);
    const RosField rf = ros_field(cone);
    for (std::size_t j = 1; j + 1 < cg.ny(); ++j) {
      for (std::size_t i = 1; i + 1 < cg.nx(); ++i) {
        if (std::hypot(double(i) - 40.0, double(j) - 40.0) < 5.0) continue;
        const std::size_t k = cg.index(i, j);
        if (cone[k] >= 30.0 - 1.0) continue;
        CHECK(std::abs(rf.ros[k] / ros - 1.0) < 0.01);
      }
    }
  }
}

TEST_CASE("direction and cutoff") {
  const Grid g = square_grid(11, 100.0, 10.0);
  std::vector<double> v(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) v[k] = 1.0 + (g.node_xy(k).y - g.origin().y) / 2000.0;
  const RosField r = ros_field(FireArrivalField(g, v));
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(r.theta[k] == doctest::Approx(std::acos(-1.0) / 2.0).epsilon(1e-12));
    CHECK_FALSE(r.masked[k]);
  }

  // 2000 m per day is about 0.023 m/s; a cutoff below it masks everything.
  const RosField cut = ros_field(FireArrivalField(g, v), 0.02);
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(cut.masked[k]);

  const Grid cg = square_grid(41, 250.0, 5.0);
  std::vector<double> spiky(cg.size(), 1.0);
  for (std::size_t k = 0; k < cg.size(); ++k) spiky[k] = 1.0 + 1e-6 * static_cast<double>(k % 7);
  const RosField s = ros_field(FireArrivalField(cg, spiky));
  for (std::size_t k = 0; k < cg.size(); ++k) {
    if (!s.masked[k]) CHECK(s.ros[k] <= 2.0);
  }
}

TEST_CASE("path rate of spread") {
  PathSet ps;
  const LocalProjection proj(kCenter);
  ps.vertices = {{proj.inverse({0, 0}), 0.0}, {proj.inverse({1500, 0}), 21.0 / 24.0}};
  ps.ignition = 0;
  ps.predecessor = {PathSet::kNone, 0};
  ps.length = {0.0, 1500.0};
  ps.hops = {0, 1};
  const auto ros = path_ros(ps);
  REQUIRE(ros.size() == 1);
  CHECK(ros[0] == doctest::Approx(1500.0 / (21.0 * 3600.0)).epsilon(1e-6));
  CHECK(ros[0] == doctest::Approx(0.01984).epsilon(1e-3));

  // Uniform chain.
  PathSet chain;
  for (int k = 0; k < 6; ++k) chain.vertices.push_back({proj.inverse({500.0 * k, 0}), 0.1 * k});
  chain.predecessor = {PathSet::kNone, 0, 1, 2, 3, 4};
  chain.length = {0, 500, 1000, 1500, 2000, 2500};
  chain.hops = {0, 1, 2, 3, 4, 5};
  const auto cr = path_ros(chain);
  REQUIRE(cr.size() == 5);
  for (double r : cr) CHECK(r == doctest::Approx(cr[0]).epsilon(1e-6));

  // A fast cone gives faster path ROS than a slow one.
  const Grid g = square_grid(61, 250.0, 4.0);
  auto mean_path_ros = [&](double ros) {
    const FireArrivalField f = cone_field(isotropic_cone(kCenter, 0.0, ros), g);
    const auto dets = scatter_detections(f, 0.05, GranuleSchedule::every(0.0, 4.0, 0.25), 3);
    const auto verts = fire_vertices(dets);
    const DetectionGraph dg = build_detection_graph(verts, g.projection(), GraphConfig{});
    const auto r = path_ros(shortest_paths(dg, dg.ignition));
    double m = 0.0;
    for (double x : r) m += x / r.size();
    return m;
  };
  CHECK(mean_path_ros(0.08) > mean_path_ros(0.02));
}

TEST_CASE("arrival-time difference distribution") {
  const double t1 = 3.0;
  const double t2 = 15.0;
  const double l = 6.0;
  const double c = t2 - t1;
  CHECK(time_diff_pdf(c, t1, t2, l) == doctest::Approx(1.0 / l));
  CHECK(time_diff_pdf(c - l - 0.1, t1, t2, l) == 0.0);
  CHECK(time_diff_pdf(c + l + 0.1, t1, t2, l) == 0.0);
  CHECK(simpson([&](double t) { return time_diff_pdf(t, t1, t2, l); }, c - l, c + l) ==
        doctest::Approx(1.0).epsilon(1e-8));

  for (auto [cc, ll] : std::vector<std::pair<double, double>>{{12, 6}, {21, 6}, {24, 12}, {7, 6.5}}) {
    CHECK(recip_cdf(1.0 / cc, cc, ll) == doctest::Approx(0.5).epsilon(1e-12));
    const double lo = 1.0 / (cc + ll);
    const double hi = 1.0 / (cc - ll);
    CHECK(recip_cdf(lo, cc, ll) == doctest::Approx(0.0));
    CHECK(recip_cdf(hi, cc, ll) == doctest::Approx(1.0));
    CHECK(recip_cdf(lo * 0.5, cc, ll) == 0.0);
    CHECK(recip_cdf(hi * 2.0, cc, ll) == 1.0);
    CHECK(simpson([&](double s) { return recip_pdf(s, cc, ll); }, lo, hi, 200000) ==
          doctest::Approx(1.0).epsilon(1e-8));
    double prev = -1.0;
    for (int k = 0; k <= 1000; ++k) {
      const double s = lo + (hi - lo) * k / 1000.0;
      const double v = recip_cdf(s, cc, ll);
      CHECK(v >= prev);
      prev = v;
      if (k > 0 && k < 1000 && std::abs(s - 1.0 / cc) > 1e-6) {
        const double h = 1e-7 * s;
        CHECK(recip_pdf(s, cc, ll) ==
              doctest::Approx((recip_cdf(s + h, cc, ll) - recip_cdf(s - h, cc, ll)) / (2 * h)).epsilon(1e-5));
      }
    }
    // Moments by quadrature of the time density.
    const double es = simpson([&](double t) { return time_diff_pdf(t, 0.0, cc, ll) / t; }, cc - ll, cc + ll, 200000);
    const double es2 =
        simpson([&](double t) { return time_diff_pdf(t, 0.0, cc, ll) / (t * t); }, cc - ll, cc + ll, 200000);
    CHECK(rel(expected_s(cc, ll), es) < 1e-8);
    CHECK(rel(expected_s2(cc, ll), es2) < 1e-8);
    CHECK(var_s(cc, ll) >= 0.0);
    CHECK(rel(var_s(cc, ll), es2 - es * es) < 1e-6);
  }
  CHECK_THROWS_AS(recip_cdf(0.1, 6.0, 6.0), std::invalid_argument);
  CHECK_THROWS_AS(expected_s(5.0, 6.0), std::invalid_argument);
}

TEST_CASE("closed-form moments") {
  CHECK(expected_s2(12.0, 6.0) == doctest::Approx(std::log(4.0 / 3.0) / 36.0).epsilon(1e-14));
  for (double c : {3.0, 12.0, 40.0}) {
    CHECK(rel(expected_s(c, c * 1e-4), 1.0 / c) < 1e-6);
    // Short windows: Var[S] ~ (l/c)^2 / (6 c^2).
    CHECK(rel(var_s(c, c * 1e-4), 1e-8 / (6.0 * c * c)) < 1e-6);
  }
  // Both evaluation branches agree where they meet.
  CHECK(rel(expected_s(10.0, 0.999999), expected_s(10.0, 1.000001)) < 1e-6);
  CHECK(rel(var_s(10.0, 0.999999), var_s(10.0, 1.000001)) < 1e-5);
  for (double c = 1.0; c < 50.0; c += 1.7) {
    for (double l = 0.05 * c; l < c; l += 0.1 * c) {
      CHECK(expected_s2(c, l) >= expected_s(c, l) * expected_s(c, l));
    }
  }
}

TEST_CASE("Monte Carlo moments of the reciprocal time") {
  for (auto [c, l] : std::vector<std::pair<double, double>>{{12, 6}, {21, 6}, {24, 12}}) {
    RosUncertaintyInputs in;
    in.d = 1000.0;
    in.t1 = 0.0;
    in.t2 = c;
    in.l = l;
    const McRosResult mc = mc_ros_sample(in, 10'000'000, 99);
    CHECK(rel(mc.s.mean, expected_s(c, l)) < 0.005);
    CHECK(rel(mc.s2.mean, expected_s2(c, l)) < 0.005);
    CHECK(rel(mc.s.variance(), var_s(c, l)) < 0.005);
  }
}

TEST_CASE("distance difference density") {
  const double d = 1500.0;
  CHECK(distance_diff_density(d, d, 335, 335) > distance_diff_density(d + 1, d, 335, 335));
  CHECK(distance_diff_density(d, d, 335, 335) > distance_diff_density(d - 1, d, 335, 335));
  const double var = 2.0 * 335.0 * 335.0;
  const double m2 = simpson([&](double z) { return (z - d) * (z - d) * distance_diff_density(z, d, 335, 335); },
                            d - 12 * 474.0, d + 12 * 474.0);
  CHECK(rel(m2, var) < 1e-8);
  const double z = 1200.0;
  CHECK(distance_diff_density(z, d, 335, 0) ==
        doctest::Approx(std::exp(-0.5 * (z - d) * (z - d) / (335.0 * 335.0)) / (335.0 * std::sqrt(2 * std::acos(-1.0)))));
  // Sampling oracle for the variance.
  Rng rng(6);
  Moments m;
  for (int k = 0; k < 200000; ++k) m.push(d + std::sqrt(var) * rng.normal());
  CHECK(rel(m.variance(), var) < 0.01);
}

TEST_CASE("variance of the rate of spread") {
  RosUncertaintyInputs in;
  in.d = 1500.0;
  in.sigma1 = in.sigma2 = 335.0;
  in.t1 = 0.0;
  in.t2 = 21.0;
  in.l = 6.0;
  const McRosResult mc = mc_ros_sample(in, 1'000'000, 5);
  CHECK(rel(mc.r.variance(), var_ros(in)) < 0.02);
  CHECK(rel(mc.r.mean, mean_ros(in)) < 0.01);

  RosUncertaintyInputs still = in;
  still.sigma1 = still.sigma2 = 0.0;
  still.l = 1e-6;
  CHECK(var_ros(still) < 1e-9);
  const McRosResult zero = mc_ros_sample(still, 1000, 1);
  CHECK(rel(zero.r.mean, 1500.0 / 21.0) < 1e-6);
  CHECK(zero.r.variance() < 1e-9);

  double prev = 0.0;
  for (double c = 30.0; c > 6.05; c -= 1.0) {
    RosUncertaintyInputs s = in;
    s.t2 = c;
    const double v = var_ros(s);
    CHECK(v > prev);
    prev = v;
  }

  const McRosResult a = mc_ros_sample(in, 10000, 42);
  const McRosResult b = mc_ros_sample(in, 10000, 42);
  CHECK(a.r.mean == b.r.mean);
  CHECK(a.r.m2 == b.r.m2);
  RosUncertaintyInputs bad = in;
  bad.t2 = 5.0;
  CHECK_THROWS_AS(var_ros(bad), std::invalid_argument);
}
