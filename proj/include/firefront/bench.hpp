#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "firefront/assess.hpp"
#include "firefront/detection.hpp"
#include "firefront/pipeline.hpp"
#include "firefront/synth.hpp"

namespace firefront {

/// Parameters of the synthetic-cone battery.
struct BatteryConfig {
  GeoPoint center{39.5, -120.5};
  std::size_t nodes = 200;  ///< per axis
  double spacing_m = 250.0;
  double t_start = 0.0;
  double t_end = 4.0;
  double granule_interval_days = 0.25;
  double detection_density = 0.05;
  double nonfire_density = 0.01;
  double ignition_jitter_m = 5000.0;
  double ros_min_mps = 0.03;
  double ros_max_mps = 0.06;
  std::size_t max_lobes = 3;
};

struct Scenario {
  std::uint64_t seed = 0;
  Grid grid;
  ConeSpec cone;
  FireArrivalField truth;
  GranuleSchedule schedule;
  std::vector<Detection> fire;
  std::vector<Detection> nonfire;
};

Grid battery_grid(const BatteryConfig& config);
Scenario make_scenario(const BatteryConfig& config, std::uint64_t seed);

struct Strategy {
  std::string name;
  EstimateOptions options;
  bool with_nonfire = false;
};

/// Multigrid from 2000 m with spline points along paths.
Strategy multigrid_strategy(bool with_nonfire);
/// One grid at the evaluation spacing, no spline points.
Strategy single_grid_strategy();

struct ScenarioScore {
  double mre = 0.0;
  double moe_x = 0.0;
  double moe_y = 0.0;
  double moe_norm = 0.0;
  double sorenson = 0.0;
  double rge = 0.0;
};

/// Runs a strategy on a scenario and scores it at the last overpass.
ScenarioScore run_strategy(const Scenario& scenario, const Strategy& strategy);

struct BatterySummary {
  std::string name;
  std::vector<ScenarioScore> scores;
  ScenarioScore mean;
};

/// Mean scores of each strategy over `count` scenarios seeded from `seed`.
std::vector<BatterySummary> run_battery(const BatteryConfig& config,
                                        const std::vector<Strategy>& strategies,
                                        std::size_t count, std::uint64_t seed);

/// Sum over scenarios of the per-scenario ranks (1 = best) of MRE, MOE norm
/// and Sorenson; ties share the mean rank. One entry per summary.
std::vector<double> rank_sums(const std::vector<BatterySummary>& summaries);

}  // namespace firefront
