#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <set>

#include "firefront/assess.hpp"
#include "firefront/hull.hpp"
#include "firefront/ros.hpp"
#include "firefront/synth.hpp"

using namespace firefront;

namespace {

const GeoPoint kCenter{39.5, -120.5};

Grid square_grid(std::size_t nodes, double t_end = 4.0) {
  const double extent = static_cast<double>(nodes - 1) * 250.0;
  return build_grid(FireDomain::around(kCenter, extent, extent, 0.0, t_end), 250.0);
}

}  // namespace

TEST_CASE("one-dimensional fire line") {
  CHECK(fireline_1d(0.0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(fireline_1d(std::numbers::pi) == doctest::Approx(std::numbers::pi - 2.2).epsilon(1e-14));
  for (double x = -10.0; x <= 10.0; x += 0.37) CHECK(fireline_1d(x) == fireline_1d(-x));
}

TEST_CASE("cone fields") {
  const Grid g = square_grid(81);
  const ConeSpec spec = isotropic_cone(kCenter, 0.3, 0.03);
  const FireArrivalField f = cone_field(spec, g);
  const std::size_t apex = g.nearest_node(g.projection().forward(kCenter));
  CHECK(f[apex] == 0.3);
  for (double v : f.values()) CHECK(v >= 0.3);

  // Radial symmetry about the apex node.
  const PlanarPoint a = g.node_xy(apex);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const PlanarPoint p = g.node_xy(k);
    const double r = std::hypot(p.x - a.x, p.y - a.y);
    const double want = std::min(4.0, 0.3 + r / (0.03 * kSecondsPerDay));
    CHECK(f[k] == doctest::Approx(want).epsilon(1e-9));
  }

  ConeSpec outside = spec;
  outside.ignition.lat += 5.0;
  CHECK_THROWS_AS(cone_field(outside, g), std::invalid_argument);
  ConeSpec bad = spec;
  bad.lobes[0].slope = -1.0;
  CHECK_THROWS_AS(cone_field(bad, g), std::invalid_argument);
}

TEST_CASE("lobe gauge and slopes") {
  Lobe l;
  l.direction = 0.7;
  l.aspect = 0.6;
  l.offset = 0.3;
  l.slope = 1.0 / (0.04 * kSecondsPerDay);
  // Along the axis the gauge grows linearly.
  const double c = std::cos(l.direction), s = std::sin(l.direction);
  CHECK(l.gauge(1000 * c, 1000 * s) == doctest::Approx(1000.0 / (1.0 + l.offset)).epsilon(1e-9));
  CHECK(l.gauge(-1000 * c, -1000 * s) == doctest::Approx(1000.0 / (1.0 - l.offset)).epsilon(1e-9));
  CHECK(l.ros(l.direction) == doctest::Approx(0.04 * (1.0 + l.offset)).epsilon(1e-9));
  // Gradient magnitude matches the lobe's rate of spread on the grid.
  ConeSpec spec;
  spec.ignition = kCenter;
  spec.t0 = 0.0;
  spec.lobes = {l};
  const Grid g = square_grid(121, 30.0);
  const FireArrivalField f = cone_field(spec, g);
  const RosField r = ros_field(f);
  const PlanarPoint apex = g.node_xy(g.nearest_node(g.projection().forward(kCenter)));
  std::size_t checked = 0;
  for (std::size_t j = 2; j + 2 < g.ny(); ++j) {
    for (std::size_t i = 2; i + 2 < g.nx(); ++i) {
      const std::size_t k = g.index(i, j);
      const PlanarPoint p = g.node_xy(k);
      const double dx = p.x - apex.x, dy = p.y - apex.y;
      if (std::hypot(dx, dy) < 3000.0) continue;
      const double theta = std::atan2(dy, dx);
      // Rate of spread normal to the level set in the direction of travel.
      if (f[k] >= 30.0) continue;
      CHECK(r.ros[k] == doctest::Approx(1.0 / (std::hypot(r.tx[k], r.ty[k]) * kSecondsPerDay)).epsilon(1e-12));
      if (std::abs(wrap_angle(theta - l.direction)) < 1e-3) {
        CHECK(r.ros[k] == doctest::Approx(l.ros(l.direction)).epsilon(0.01));
        ++checked;
      }
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("granule schedule") {
  const GranuleSchedule s = GranuleSchedule::every(0.0, 1.0, 0.25);
  CHECK(s.times == std::vector<double>{0.0, 0.25, 0.5, 0.75});
  CHECK(s.first_at_or_after(0.3) == 0.5);
  CHECK(s.first_at_or_after(0.5) == 0.5);
  CHECK(s.first_at_or_after(0.8) < 0.0);
  GranuleSchedule bad{{0.0, 0.5, 0.5}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("scattered fire detections") {
  const Grid g = square_grid(200);
  const FireArrivalField truth = cone_field(isotropic_cone(kCenter, 0.1, 0.05), g);
  const GranuleSchedule sched = GranuleSchedule::every(0.0, 4.0, 0.25);

  const auto dense = scatter_detections(truth, 1.0, GranuleSchedule::every(0.0, 4.0, 0.01), 1);
  std::size_t eligible_dense = 0;
  for (double v : truth.values()) eligible_dense += v <= 3.99 + 1e-12;
  CHECK(dense.size() == eligible_dense);

  const auto dets = scatter_detections(truth, 0.05, sched, 2);
  std::size_t eligible = 0;
  for (double v : truth.values()) eligible += v <= sched.times.back();
  const double mean = 0.05 * eligible;
  const double sd = std::sqrt(eligible * 0.05 * 0.95);
  CHECK(std::abs(static_cast<double>(dets.size()) - mean) < 3.0 * sd);

  const std::set<double> on_schedule(sched.times.begin(), sched.times.end());
  const SnappedDetections sd_ = snap_detections(g, dets);
  REQUIRE(sd_.size() == dets.size());
  for (std::size_t k = 0; k < dets.size(); ++k) {
    CHECK(dets[k].kind == DetectionKind::Fire);
    CHECK(on_schedule.count(dets[k].time) == 1);
    CHECK(dets[k].time >= truth[sd_.node[k]]);
    CHECK(sd_.displacement[k] < 1e-6);
    CHECK(dets[k].confidence >= 70);
  }
  CHECK(scatter_detections(truth, 0.05, sched, 2) == dets);
  CHECK(scatter_detections(truth, 0.05, sched, 3) != dets);
  CHECK_THROWS_AS(scatter_detections(truth, 0.0, sched, 2), std::invalid_argument);
}

TEST_CASE("scattered non-fire pixels") {
  const Grid g = square_grid(61);
  const FireArrivalField truth = cone_field(isotropic_cone(kCenter, 0.0, 0.03), g);
  const GranuleSchedule sched = GranuleSchedule::every(0.0, 4.0, 0.25);
  const auto nf = scatter_nonfire(truth, 0.1, sched, 4);
  const auto fire = scatter_detections(truth, 1.0, sched, 5);
  const std::set<double> on_schedule(sched.times.begin(), sched.times.end());
  const SnappedDetections snf = snap_detections(g, nf);
  const SnappedDetections sf = snap_detections(g, fire);
  std::set<std::pair<std::size_t, double>> fire_keys;
  for (std::size_t k = 0; k < sf.size(); ++k) fire_keys.insert({sf.node[k], sf.detections[k].time});
  const std::size_t apex = g.nearest_node(g.projection().forward(kCenter));
  for (std::size_t k = 0; k < snf.size(); ++k) {
    const Detection& d = snf.detections[k];
    CHECK(d.kind == DetectionKind::NonFireLand);
    CHECK(on_schedule.count(d.time) == 1);
    CHECK(truth[snf.node[k]] > d.time);
    CHECK(snf.node[k] != apex);
    CHECK(fire_keys.count({snf.node[k], d.time}) == 0);
  }
  const auto none = scatter_nonfire(FireArrivalField::constant(g, 4.0), 0.05, sched, 6);
  CHECK(none.size() > 0);
  for (const Detection& d : none) CHECK(d.kind == DetectionKind::NonFireLand);
  CHECK(scatter_nonfire(truth, 0.1, sched, 4) == nf);
}

TEST_CASE("perimeters") {
  const Grid g = square_grid(121);
  const double ros = 0.03;
  const FireArrivalField f = cone_field(isotropic_cone(kCenter, 0.0, ros), g);
  const double t = 2.0;
  const auto pts = synth_perimeter(f, t, 100);
  REQUIRE(pts.size() == 100);
  const PlanarPoint apex = g.node_xy(g.nearest_node(g.projection().forward(kCenter)));
  const double r = t * ros * kSecondsPerDay;
  std::vector<PlanarPoint> xy;
  for (const Detection& d : pts) {
    CHECK(d.time == t);
    const PlanarPoint p = g.projection().forward(d.pos);
    xy.push_back(p);
    CHECK(std::abs(std::hypot(p.x - apex.x, p.y - apex.y) - r) < g.spacing());
  }
  const double area = polygon_area(convex_hull(xy));
  CHECK(std::abs(area / (std::numbers::pi * r * r) - 1.0) < 0.05);
  CHECK_THROWS_AS(synth_perimeter(f, -1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(synth_perimeter(FireArrivalField::constant(g, 4.0), 2.0, 10), std::invalid_argument);

  const auto contours = level_contours(f, t);
  REQUIRE(contours.size() == 1);
}

TEST_CASE("cone area growth") {
  const Grid g = square_grid(161);
  const double ros = 0.03;
  const FireArrivalField f = cone_field(isotropic_cone(kCenter, 0.25, ros), g);
  const std::vector<double> times{1.0, 1.5, 2.0, 2.5, 3.0};
  const auto areas = fire_area_series(f, times);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double r = (times[k] - 0.25) * ros * kSecondsPerDay;
    const double want = std::numbers::pi * r * r / (250.0 * 250.0);
    CHECK(std::abs(areas[k] / want - 1.0) < 0.05);
  }
}
