#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "firefront/assess.hpp"
#include "firefront/random.hpp"
#include "firefront/synth.hpp"

using namespace firefront;

namespace {

const GeoPoint kCenter{39.5, -120.5};

Grid small_grid(std::size_t nodes) {
  const double extent = static_cast<double>(nodes - 1) * 250.0;
  return build_grid(FireDomain::around(kCenter, extent, extent, 0.0, 4.0), 250.0);
}

BurnMask mask_of(const Grid& g, std::vector<bool> b) { return BurnMask{g, std::move(b)}; }

BurnMask random_mask(Rng& rng, const Grid& g, double p) {
  std::vector<bool> b(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) b[k] = rng.uniform() < p;
  return mask_of(g, b);
}

}  // namespace

TEST_CASE("area series") {
  const Grid g = small_grid(41);
  const FireArrivalField f = cone_field(isotropic_cone(kCenter, 0.5, 0.02), g);
  const std::vector<double> times{0.1, 0.5, 1.0, 2.0, 3.0, 4.0};
  const auto a = fire_area_series(f, times);
  CHECK(a[0] == 0.0);
  CHECK(a[1] == 1.0);
  for (std::size_t k = 1; k < a.size(); ++k) CHECK(a[k] >= a[k - 1]);
  CHECK(a.back() == static_cast<double>(g.size()));
  std::size_t burned = 0;
  for (double v : f.values()) burned += v < 4.0;
  const std::vector<double> last{3.999999};
  CHECK(fire_area_series(f, last)[0] <= static_cast<double>(g.size()));
  CHECK(fire_area_series(f, last)[0] >= static_cast<double>(burned));
}

TEST_CASE("relative growth error") {
  const std::vector<double> g{1, 4, 9, 16};
  CHECK(rge(g, g) == 0.0);
  const std::vector<double> twice{2, 8, 18, 32};
  CHECK(rge(twice, g) == doctest::Approx(1.0));
  const std::vector<double> g3{3, 12, 27, 48};
  const std::vector<double> e{2, 5, 7, 20};
  const std::vector<double> e3{6, 15, 21, 60};
  CHECK(rge(e3, g3) == doctest::Approx(rge(e, g)).epsilon(1e-14));
  const std::vector<double> zeros(4, 0.0);
  CHECK_THROWS_AS(rge(g, zeros), std::invalid_argument);
  CHECK_THROWS_AS(rge(std::vector<double>{1, 2}, g), std::invalid_argument);
}

TEST_CASE("measure of effectiveness") {
  const Grid g = small_grid(11);
  std::vector<bool> obs(g.size(), false), pred(g.size(), false);
  for (std::size_t k = 0; k < 100; ++k) obs[k] = true;
  for (std::size_t k = 20; k < 120; ++k) pred[k] = true;
  const MoeResult m = moe(mask_of(g, obs), mask_of(g, pred));
  CHECK(m.x == doctest::Approx(0.8));
  CHECK(m.y == doctest::Approx(0.8));
  CHECK(m.false_negative.size() == 20);
  CHECK(m.false_positive.size() == 20);
  CHECK(m.false_negative.front() == 0);
  CHECK(m.false_positive.front() == 100);

  const MoeResult same = moe(mask_of(g, obs), mask_of(g, obs));
  CHECK(same.x == 1.0);
  CHECK(same.y == 1.0);
  std::vector<bool> other(g.size(), false);
  for (std::size_t k = 100; k < 110; ++k) other[k] = true;
  const MoeResult dis = moe(mask_of(g, obs), mask_of(g, other));
  CHECK(dis.x == 0.0);
  CHECK(dis.y == 0.0);

  // Nested prediction: no false positives.
  std::vector<bool> inner(g.size(), false);
  for (std::size_t k = 10; k < 50; ++k) inner[k] = true;
  CHECK(moe(mask_of(g, obs), mask_of(g, inner)).y == 1.0);

  const BurnMask empty = mask_of(g, std::vector<bool>(g.size(), false));
  CHECK_THROWS_AS(moe(empty, mask_of(g, obs)), std::invalid_argument);
  CHECK_THROWS_AS(moe(mask_of(g, obs), empty), std::invalid_argument);
}

TEST_CASE("Sorenson index") {
  const Grid g = small_grid(11);
  const BurnMask empty = mask_of(g, std::vector<bool>(g.size(), false));
  CHECK(sorenson(empty, empty) == 1.0);
  Rng rng(1);
  std::size_t checked = 0;
  while (checked < 100) {
    const BurnMask a = random_mask(rng, g, rng.uniform(0.05, 0.9));
    const BurnMask b = random_mask(rng, g, rng.uniform(0.05, 0.9));
    if (a.count() == 0 || b.count() == 0) continue;
    const MoeResult m = moe(a, b);
    const double s = sorenson(a, b);
    CHECK(s == sorenson(b, a));
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
    if (m.x + m.y > 0.0) CHECK(std::abs(s - 2.0 * m.x * m.y / (m.x + m.y)) < 1e-12);
    CHECK(sorenson(a, a) == 1.0);

    // Relabeling the nodes leaves the scores unchanged.
    std::vector<std::size_t> perm(g.size());
    for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
    for (std::size_t k = perm.size() - 1; k > 0; --k) std::swap(perm[k], perm[rng.below(k + 1)]);
    std::vector<bool> pa(g.size()), pb(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
      pa[perm[k]] = a.burned[k];
      pb[perm[k]] = b.burned[k];
    }
    const MoeResult pm = moe(mask_of(g, pa), mask_of(g, pb));
    CHECK(pm.x == m.x);
    CHECK(pm.y == m.y);
    CHECK(sorenson(mask_of(g, pa), mask_of(g, pb)) == s);
    ++checked;
  }
  std::vector<bool> left(g.size(), false), right(g.size(), false);
  left[0] = right[1] = true;
  CHECK(sorenson(mask_of(g, left), mask_of(g, right)) == 0.0);
  const std::vector<double> scores{1.0, 0.5, 0.0};
  CHECK(mean_sorenson(scores) == doctest::Approx(0.5));
}

TEST_CASE("relative error") {
  const Grid g = small_grid(21);
  const FireArrivalField t = cone_field(isotropic_cone(kCenter, 0.5, 0.02), g);
  CHECK(relative_error(t, t) == 0.0);
  std::vector<double> shifted(t.values().begin(), t.values().end());
  double norm = 0.0;
  for (double& v : shifted) {
    norm += v * v;
    v -= 0.1;
  }
  const FireArrivalField e(g, shifted);
  CHECK(relative_error(t, e) == doctest::Approx(0.1 * std::sqrt(double(g.size())) / std::sqrt(norm)).epsilon(1e-12));
  CHECK_THROWS_AS(relative_error(FireArrivalField::constant(g, 0.0), t), std::invalid_argument);
}

TEST_CASE("direction statistics") {
  const std::vector<double> ros{0.1, 0.2, 0.3, 0.4};
  const std::vector<double> theta{0.0, 1.0, -1.0, 3.0};
  const std::vector<bool> all(4, true);
  const RosDirectionStats zero = ros_direction_stats(ros, theta, ros, theta, all);
  CHECK(zero.mrd == 0.0);
  CHECK(zero.srd == 0.0);
  CHECK(zero.mdd == 0.0);
  CHECK(zero.sdd == 0.0);
  CHECK(zero.cells == 4);

  std::vector<double> faster = ros;
  for (double& r : faster) r += 0.1;
  const RosDirectionStats off = ros_direction_stats(ros, theta, faster, theta, all);
  CHECK(off.mrd == doctest::Approx(0.1));
  CHECK(off.srd < 1e-12);

  const double pi = std::numbers::pi;
  CHECK(wrap_angle(pi) == doctest::Approx(pi));
  CHECK(wrap_angle(-pi) == doctest::Approx(pi));
  CHECK(wrap_angle(3 * pi) == doctest::Approx(pi));
  CHECK(wrap_angle(0.5 - 2 * pi) == doctest::Approx(0.5));
  const std::vector<double> t0{0.0, 0.0};
  const std::vector<double> plus{pi - 1e-9, -pi + 1e-9};
  const std::vector<double> r2{0.1, 0.1};
  const std::vector<bool> both(2, true);
  const RosDirectionStats w = ros_direction_stats(r2, t0, r2, plus, both);
  CHECK(std::abs(w.mdd) < 1e-6);
  CHECK(std::abs(w.sdd - pi) < 1e-6);
  // Theta differences near +pi and -pi wrap to the same magnitude.
  const std::vector<double> a{0.0}, b{pi + 0.2}, c{-pi - 0.2};
  const std::vector<double> r1{0.1};
  const std::vector<bool> one(1, true);
  CHECK(ros_direction_stats(r1, a, r1, b, one).mdd == doctest::Approx(-(pi - 0.2)));
  CHECK(ros_direction_stats(r1, a, r1, c, one).mdd == doctest::Approx(pi - 0.2));

  CHECK_THROWS_AS(ros_direction_stats(ros, theta, ros, theta, std::vector<bool>(4, false)), std::invalid_argument);
}

TEST_CASE("masks from polygons and classification") {
  const Grid g = small_grid(21);
  const PlanarPoint o = g.origin();
  const std::vector<PlanarPoint> box{{o.x + 1000, o.y + 1000}, {o.x + 2000, o.y + 1000},
                                     {o.x + 2000, o.y + 2000}, {o.x + 1000, o.y + 2000}};
  const BurnMask m = BurnMask::from_polygon(g, box);
  CHECK(m.count() == 25);
  CHECK(m.burned[g.index(4, 4)]);
  CHECK(m.burned[g.index(8, 8)]);
  CHECK_FALSE(m.burned[g.index(9, 8)]);

  const FireArrivalField f = cone_field(isotropic_cone(kCenter, 0.5, 0.02), g);
  const BurnMask fm = BurnMask::from_field(f, 1.0);
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(fm.burned[k] == (f[k] <= 1.0));
  const auto cls = classification(fm, m);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double want = fm.burned[k] ? (m.burned[k] ? 1 : 2) : (m.burned[k] ? 3 : 0);
    CHECK(cls[k] == want);
  }
}

TEST_CASE("full report on identical fields") {
  const Grid g = small_grid(41);
  const FireArrivalField f = cone_field(isotropic_cone(kCenter, 0.2, 0.02), g);
  const std::vector<double> times{1.0, 2.0, 3.0};
  const AssessmentReport r = assess_fields(f, f, 3.0, times);
  CHECK(r.moe_x == 1.0);
  CHECK(r.moe_y == 1.0);
  CHECK(r.sorenson == 1.0);
  CHECK(r.rge == 0.0);
  REQUIRE(r.rel_error);
  CHECK(*r.rel_error == 0.0);
  CHECK(r.mrd == 0.0);
  CHECK(r.mdd == 0.0);
  CHECK(r.spacing_m == 250.0);
}
