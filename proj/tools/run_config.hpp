#pragma once

#include <vector>

#include "CLI11.hpp"
#include "firefront/bench.hpp"
#include "firefront/fmc.hpp"
#include "firefront/likelihood.hpp"
#include "firefront/pipeline.hpp"

namespace firefront::cli {

struct IgnitionSettings {
  std::size_t nx = 10;
  std::size_t ny = 10;
  std::size_t nt = 5;
  double time_step_h = 6.0;  ///< candidate times step back from the earliest detection
  double ros_mps = 0.05;     ///< surrogate cone rate of spread
  std::size_t refine_rounds = 0;
  double smoothness_weight = 0.0;
};

/// Every tunable of the tool. Field defaults are the library defaults.
struct RunConfig {
  BatteryConfig scenario{};  ///< [domain] and [synth]
  LikelihoodParams likelihood{};
  EstimateOptions estimate{};
  double speed_limit_mps = 0.0;  ///< 0 disables the filter
  std::vector<double> burn_fmc;
  std::vector<double> burn_ros_rel;
  double fmc_max_step = 0.01;
  double ros_cutoff_mps = 2.0;
  IgnitionSettings ignition{};

  RunConfig();

  Grid grid() const;
  GranuleSchedule schedule() const;
  BurnCurve burn_curve() const;
  /// Estimation options with the seed and the speed limit applied.
  EstimateOptions estimate_options(std::uint64_t seed) const;
};

/// TOML reader that maps `[section] key` to the option `--section.key`.
class SectionedToml : public CLI::ConfigTOML {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;
};

/// Registers `--config FILE` and one `--section.key` option per field.
void add_config_options(CLI::App& app, RunConfig& config);

}  // namespace firefront::cli
