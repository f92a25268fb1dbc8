#include "firefront/bench.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "firefront/parallel.hpp"
#include "firefront/random.hpp"

namespace firefront {

Grid battery_grid(const BatteryConfig& config) {
  const double extent = static_cast<double>(config.nodes - 1) * config.spacing_m;
  const FireDomain dom =
      FireDomain::around(config.center, extent, extent, config.t_start, config.t_end);
  Grid g = build_grid(dom, config.spacing_m);
  if (g.nx() != config.nodes || g.ny() != config.nodes) {
    throw std::logic_error("battery grid has unexpected node counts");
  }
  return g;
}

Scenario make_scenario(const BatteryConfig& config, std::uint64_t seed) {
  Scenario s;
  s.seed = seed;
  s.grid = battery_grid(config);
  Rng rng(derive_seed(seed, 0));
  const LocalProjection& proj = s.grid.projection();
  const double jx = rng.uniform(-config.ignition_jitter_m, config.ignition_jitter_m);
  const double jy = rng.uniform(-config.ignition_jitter_m, config.ignition_jitter_m);
  s.cone.ignition = proj.inverse({jx, jy});
  s.cone.t0 = config.t_start + rng.uniform(0.0, 0.25);
  s.cone.lobes.clear();
  const std::size_t lobes = 1 + static_cast<std::size_t>(rng.below(config.max_lobes));
  for (std::size_t q = 0; q < lobes; ++q) {
    Lobe l;
    l.direction = rng.uniform(-std::numbers::pi, std::numbers::pi);
    l.aspect = rng.uniform(0.6, 1.0);
    l.offset = rng.uniform(0.0, 0.4);
    const double ros = rng.uniform(config.ros_min_mps, config.ros_max_mps);
    // Forward rate of spread equals `ros`.
    l.slope = (1.0 + l.offset) / (ros * kSecondsPerDay);
    s.cone.lobes.push_back(l);
  }
  s.truth = cone_field(s.cone, s.grid);
  s.schedule = GranuleSchedule::every(config.t_start, config.t_end, config.granule_interval_days);
  s.fire = scatter_detections(s.truth, config.detection_density, s.schedule, derive_seed(seed, 1));
  s.nonfire = scatter_nonfire(s.truth, config.nonfire_density, s.schedule, derive_seed(seed, 2));
  return s;
}

Strategy multigrid_strategy(bool with_nonfire) {
  Strategy s;
  s.name = with_nonfire ? "multigrid-2000+nonfire" : "multigrid-2000";
  s.options.interpolate = true;
  s.options.estimator.use_multigrid = true;
  s.options.estimator.use_nonfire = with_nonfire;
  s.with_nonfire = with_nonfire;
  return s;
}

Strategy single_grid_strategy() {
  Strategy s;
  s.name = "single-grid";
  s.options.interpolate = false;
  s.options.estimator.use_multigrid = false;
  return s;
}

ScenarioScore run_strategy(const Scenario& scenario, const Strategy& strategy) {
  std::vector<Detection> dets = scenario.fire;
  if (strategy.with_nonfire) dets.insert(dets.end(), scenario.nonfire.begin(), scenario.nonfire.end());
  const EstimateResult est = estimate_fire_arrival(dets, scenario.grid, strategy.options);
  const double t_ref = scenario.schedule.times.back();
  const AssessmentReport r = assess_fields(scenario.truth, est.field, t_ref, scenario.schedule.times);
  ScenarioScore sc;
  sc.mre = r.rel_error.value_or(0.0);
  sc.moe_x = r.moe_x;
  sc.moe_y = r.moe_y;
  sc.moe_norm = r.moe_norm;
  sc.sorenson = r.sorenson;
  sc.rge = r.rge;
  return sc;
}

std::vector<BatterySummary> run_battery(const BatteryConfig& config,
                                        const std::vector<Strategy>& strategies,
                                        std::size_t count, std::uint64_t seed) {
  std::vector<BatterySummary> out(strategies.size());
  for (std::size_t q = 0; q < strategies.size(); ++q) {
    out[q].name = strategies[q].name;
    out[q].scores.resize(count);
  }
  parallel_for(count, [&](std::size_t i) {
    const Scenario sc = make_scenario(config, derive_seed(seed, 1000 + i));
    for (std::size_t q = 0; q < strategies.size(); ++q) out[q].scores[i] = run_strategy(sc, strategies[q]);
  });
  for (BatterySummary& b : out) {
    ScenarioScore m;
    for (const ScenarioScore& s : b.scores) {
      m.mre += s.mre;
      m.moe_x += s.moe_x;
      m.moe_y += s.moe_y;
      m.moe_norm += s.moe_norm;
      m.sorenson += s.sorenson;
      m.rge += s.rge;
    }
    const double n = static_cast<double>(std::max<std::size_t>(1, b.scores.size()));
    m.mre /= n;
    m.moe_x /= n;
    m.moe_y /= n;
    m.moe_norm /= n;
    m.sorenson /= n;
    m.rge /= n;
    b.mean = m;
  }
  return out;
}

std::vector<double> rank_sums(const std::vector<BatterySummary>& summaries) {
  const std::size_t k = summaries.size();
  std::vector<double> sums(k, 0.0);
  if (k == 0) return sums;
  const std::size_t n = summaries[0].scores.size();
  // Ranks with ties sharing the mean rank; `better` orders best first.
  auto add_ranks = [&](std::size_t i, auto value, bool lower_is_better) {
    for (std::size_t a = 0; a < k; ++a) {
      const double va = value(summaries[a].scores[i]);
      double better = 0.0;
      double equal = 0.0;
      for (std::size_t b = 0; b < k; ++b) {
        const double vb = value(summaries[b].scores[i]);
        if (vb == va) {
          equal += 1.0;
        } else if (lower_is_better ? vb < va : vb > va) {
          better += 1.0;
        }
      }
      sums[a] += better + (equal + 1.0) / 2.0;
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    add_ranks(i, [](const ScenarioScore& s) { return s.mre; }, true);
    add_ranks(i, [](const ScenarioScore& s) { return s.moe_norm; }, false);
    add_ranks(i, [](const ScenarioScore& s) { return s.sorenson; }, false);
  }
  return sums;
}

}  // namespace firefront
