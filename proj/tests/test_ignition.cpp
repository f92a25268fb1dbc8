#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "firefront/ignition.hpp"

using namespace firefront;

namespace {

const GeoPoint kCenter{39.5, -120.5};

struct Scene {
  FireDomain dom = FireDomain::around(kCenter, 20000, 20000, 0.0, 3.0);
  Grid grid = build_grid(dom, 250.0);
  std::vector<double> times{0.1, 0.2, 0.3, 0.4, 0.5};
  std::vector<IgnitionCandidate> cands = candidate_grid(dom, 10, 10, times);
  ConeSpec shape = isotropic_cone(kCenter, 0.0, 0.05);
  GranuleSchedule sched = GranuleSchedule::every(0.0, 3.0, 0.25);
};

}  // namespace

TEST_CASE("candidate lattice") {
  const Scene s;
  CHECK(s.cands.size() == 500);
  for (const auto& c : s.cands) CHECK(s.dom.contains(c.pos));
  // Time outermost, then rows, then columns.
  CHECK(s.cands[0].t0 == 0.1);
  CHECK(s.cands[100].t0 == 0.2);
  CHECK(s.cands[1].pos.lon > s.cands[0].pos.lon);
  CHECK(s.cands[1].pos.lat == s.cands[0].pos.lat);
  CHECK(s.cands[10].pos.lat > s.cands[0].pos.lat);

  const std::vector<double> one{0.25};
  const auto single = candidate_grid(s.dom, 1, 1, one);
  REQUIRE(single.size() == 1);
  CHECK(single[0].pos.lat == doctest::Approx(s.dom.center().lat).epsilon(1e-12));
  CHECK(single[0].pos.lon == doctest::Approx(s.dom.center().lon).epsilon(1e-12));
  CHECK_THROWS_AS(candidate_grid(s.dom, 0, 1, one), std::invalid_argument);
  CHECK_THROWS_AS(candidate_grid(s.dom, 1, 1, std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("surrogate forecasts") {
  const Scene s;
  const ConeSpec truth = isotropic_cone(s.cands[57].pos, 0.3, 0.05);
  const FireArrivalField t = cone_field(truth, s.grid);
  const FireArrivalField f = surrogate_forecast({truth.ignition, truth.t0}, s.shape, s.grid);
  CHECK(std::equal(t.values().begin(), t.values().end(), f.values().begin()));

  const FireArrivalField later = surrogate_forecast({truth.ignition, 0.4}, s.shape, s.grid);
  for (std::size_t k = 0; k < s.grid.size(); ++k) {
    if (later[k] < 3.0) CHECK(later[k] - f[k] == doctest::Approx(0.1).epsilon(1e-9));
  }

  const FireArrivalField moved = surrogate_forecast({s.cands[58].pos, 0.3}, s.shape, s.grid);
  const auto argmin = [](const FireArrivalField& x) {
    return static_cast<std::size_t>(std::min_element(x.values().begin(), x.values().end()) - x.values().begin());
  };
  CHECK(argmin(moved) == s.grid.nearest_node(s.grid.projection().forward(s.cands[58].pos)));
  CHECK(argmin(moved) != argmin(f));
}

TEST_CASE("dense detections recover the exact candidate") {
  const Scene s;
  for (std::size_t truth_idx : {246u, 373u}) {
    const IgnitionCandidate truth = s.cands[truth_idx];
    const FireArrivalField tf = surrogate_forecast(truth, s.shape, s.grid);
    const auto dets = scatter_detections(tf, 1.0, s.sched, 5);
    const SearchResult r = grid_search(s.cands, dets, s.shape, s.grid, SearchOptions{});
    REQUIRE(r.table.size() == s.cands.size());
    CHECK(r.best == truth_idx);
    double top = -kInf;
    for (const auto& row : r.table) top = std::max(top, row.score);
    CHECK(r.winner().score == top);

    // A detection every candidate explains equally adds the same constant to all scores.
    std::vector<Detection> shifted = dets;
    shifted.push_back({s.grid.node_geo(0), 0.01, DetectionKind::NonFireLand});
    const SearchResult rs = grid_search(s.cands, shifted, s.shape, s.grid, SearchOptions{});
    CHECK(rs.best == r.best);
    const double c = rs.table[0].score - r.table[0].score;
    for (std::size_t k = 0; k < r.table.size(); k += 7) {
      CHECK(rs.table[k].score - r.table[k].score == doctest::Approx(c).epsilon(1e-9));
    }
  }
}

TEST_CASE("dense fire-only detections never pick a later ignition") {
  // With the ignition on an overpass the fire-only likelihood prefers one
  // step earlier; the position is still exact.
  const Scene s;
  const std::size_t truth_idx = 403;  // t0 = 0.5
  const FireArrivalField tf = surrogate_forecast(s.cands[truth_idx], s.shape, s.grid);
  const auto dets = scatter_detections(tf, 1.0, s.sched, 5);
  const SearchResult r = grid_search(s.cands, dets, s.shape, s.grid, SearchOptions{});
  CHECK(r.best % 100 == truth_idx % 100);
  CHECK(r.winner().candidate.t0 <= s.cands[truth_idx].t0);
  CHECK(r.winner().candidate.t0 >= s.cands[truth_idx].t0 - 0.1 - 1e-12);
}

TEST_CASE("perimeter detections give an early ignition time") {
  const Scene s;
  const IgnitionCandidate truth = s.cands[246];
  const FireArrivalField tf = surrogate_forecast(truth, s.shape, s.grid);
  for (double tp : {0.75, 1.0, 1.5}) {
    const auto per = synth_perimeter(tf, tp, 30);
    const SearchResult r = grid_search(s.cands, per, s.shape, s.grid, SearchOptions{});
    CHECK(r.winner().candidate.t0 <= truth.t0);
  }
}

TEST_CASE("non-fire pixels penalize early candidates") {
  const Scene s;
  const std::size_t truth_idx = 246;  // t0 = 0.3
  const std::size_t early_idx = 46;   // same place, t0 = 0.1
  const FireArrivalField tf = surrogate_forecast(s.cands[truth_idx], s.shape, s.grid);
  const auto fire = scatter_detections(tf, 0.05, s.sched, 8);
  const FireArrivalField early = surrogate_forecast(s.cands[early_idx], s.shape, s.grid);
  std::vector<Detection> nonfire;
  for (const Detection& d : scatter_nonfire(tf, 0.05, s.sched, 9)) {
    const std::size_t k = s.grid.nearest_node(s.grid.projection().forward(d.pos));
    if (early[k] <= d.time) nonfire.push_back(d);  // burning in the early candidate only
  }
  REQUIRE_FALSE(nonfire.empty());
  std::vector<Detection> both = fire;
  both.insert(both.end(), nonfire.begin(), nonfire.end());
  const std::vector<IgnitionCandidate> pair{s.cands[truth_idx], s.cands[early_idx]};
  const SearchResult a = grid_search(pair, fire, s.shape, s.grid, SearchOptions{});
  const SearchResult b = grid_search(pair, both, s.shape, s.grid, SearchOptions{});
  CHECK(b.table[0].score - b.table[1].score > a.table[0].score - a.table[1].score);
}

TEST_CASE("ties and smoothness penalty") {
  const Scene s;
  CHECK_THROWS_AS(grid_search(s.cands, {}, s.shape, s.grid, SearchOptions{}), std::invalid_argument);

  // A non-fire pixel seen before any candidate ignites cannot tell them apart.
  const std::vector<Detection> blank{{s.grid.node_geo(0), 0.01, DetectionKind::NonFireLand}};
  const std::vector<IgnitionCandidate> late_first{s.cands[246], s.cands[46], s.cands[146], s.cands[47]};
  const SearchResult tie = grid_search(late_first, blank, s.shape, s.grid, SearchOptions{});
  for (const auto& row : tie.table) CHECK(row.score == tie.table[0].score);
  CHECK(tie.best == 1);

  SearchOptions opt;
  opt.reference = surrogate_forecast(s.cands[246], s.shape, s.grid);
  opt.smoothness_weight = 1.0;
  const SearchResult pen = grid_search(s.cands, blank, s.shape, s.grid, opt);
  CHECK(pen.best == 246);
  for (std::size_t k = 0; k < pen.table.size(); ++k) {
    if (k != 246) CHECK(pen.table[k].score < pen.winner().score);
  }
  // Shifting all scores by a constant keeps the winner.
  opt.smoothness_weight = 0.0;
  const SearchResult flat = grid_search(s.cands, blank, s.shape, s.grid, opt);
  CHECK(flat.best == 0);
}

TEST_CASE("refinement keeps the coarse winner") {
  const Scene s;
  const IgnitionCandidate c = s.cands[246];
  const double dlat = (s.dom.lat_max - s.dom.lat_min) / 10.0;
  const double dlon = (s.dom.lon_max - s.dom.lon_min) / 10.0;
  const auto fine = refine_candidates(c, s.dom, dlat, dlon, 0.1, 5, 5, 5);
  REQUIRE_FALSE(fine.empty());
  CHECK(fine[0].pos == c.pos);
  CHECK(fine[0].t0 == c.t0);
  for (const auto& f : fine) {
    CHECK(s.dom.contains(f.pos));
    CHECK(std::abs(f.pos.lat - c.pos.lat) <= dlat * (1 + 1e-12));
    CHECK(std::abs(f.t0 - c.t0) <= 0.1 * (1 + 1e-12));
  }
  const auto corner = refine_candidates(s.cands[0], s.dom, dlat, dlon, 0.1, 5, 5, 5);
  for (const auto& f : corner) {
    CHECK(s.dom.contains(f.pos));
    CHECK(f.t0 >= s.dom.t_start);
  }

  const IgnitionCandidate truth{{c.pos.lat + 0.3 * dlat, c.pos.lon - 0.2 * dlon}, 0.27};
  const auto dets = scatter_detections(surrogate_forecast(truth, s.shape, s.grid), 0.2, s.sched, 3);
  const SearchResult coarse = grid_search(s.cands, dets, s.shape, s.grid, SearchOptions{});
  const SearchResult refined = refined_search(s.dom, 10, 10, s.times, 2, dets, s.shape, s.grid, SearchOptions{});
  CHECK(refined.winner().score >= coarse.winner().score);
}
