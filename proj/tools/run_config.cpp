#include "run_config.hpp"

#include <memory>
#include <stdexcept>

namespace firefront::cli {

RunConfig::RunConfig() {
  for (const BurnCurve::Sample& s : BurnCurve::default_samples()) {
    burn_fmc.push_back(s.fmc);
    burn_ros_rel.push_back(s.ros_rel);
  }
}

Grid RunConfig::grid() const { return battery_grid(scenario); }

GranuleSchedule RunConfig::schedule() const {
  return GranuleSchedule::every(scenario.t_start, scenario.t_end, scenario.granule_interval_days);
}

BurnCurve RunConfig::burn_curve() const {
  if (burn_fmc.size() != burn_ros_rel.size()) {
    throw std::invalid_argument("fmc.burn_curve.fmc and fmc.burn_curve.ros_rel differ in length");
  }
  std::vector<BurnCurve::Sample> s;
  for (std::size_t k = 0; k < burn_fmc.size(); ++k) s.push_back({burn_fmc[k], burn_ros_rel[k]});
  return BurnCurve(std::move(s));
}

EstimateOptions RunConfig::estimate_options(std::uint64_t seed) const {
  EstimateOptions o = estimate;
  o.graph.seed = seed;
  o.graph.speed_limit_mps = speed_limit_mps > 0.0 ? speed_limit_mps : kInf;
  return o;
}

std::vector<CLI::ConfigItem> SectionedToml::from_config(std::istream& input) const {
  std::vector<CLI::ConfigItem> out;
  for (CLI::ConfigItem& item : CLI::ConfigTOML::from_config(input)) {
    // Section open/close markers only matter for subcommand sections.
    if (item.name == "++" || item.name == "--") continue;
    item.name = item.fullname();
    item.parents.clear();
    out.push_back(std::move(item));
  }
  return out;
}

namespace {

template <typename T>
void add(CLI::App& app, const std::string& key, T& value, const std::string& help) {
  app.add_option("--" + key, value, help)->capture_default_str()->group("Configuration");
}

}  // namespace

void add_config_options(CLI::App& app, RunConfig& c) {
  app.set_config("--config", "", "TOML file with [section] key = value entries");
  app.config_formatter(std::make_shared<SectionedToml>());
  app.allow_config_extras(CLI::config_extras_mode::error);

  BatteryConfig& s = c.scenario;
  add(app, "domain.center_lat", s.center.lat, "Domain center latitude");
  add(app, "domain.center_lon", s.center.lon, "Domain center longitude");
  add(app, "domain.nodes", s.nodes, "Grid nodes per axis");
  add(app, "domain.spacing_m", s.spacing_m, "Grid spacing (m)");
  add(app, "domain.t_start", s.t_start, "Start of the time window (days)");
  add(app, "domain.t_end", s.t_end, "End of the time window (days)");

  add(app, "synth.granule_interval_days", s.granule_interval_days, "Time between overpasses");
  add(app, "synth.detection_density", s.detection_density, "Fraction of burning nodes detected");
  add(app, "synth.nonfire_density", s.nonfire_density, "Fraction of unburned (node, overpass) pairs reported");
  add(app, "synth.ignition_jitter_m", s.ignition_jitter_m, "Ignition offset range from the center (m)");
  add(app, "synth.ros_min_mps", s.ros_min_mps, "Slowest lobe rate of spread");
  add(app, "synth.ros_max_mps", s.ros_max_mps, "Fastest lobe rate of spread");
  add(app, "synth.max_lobes", s.max_lobes, "Maximum number of spread lobes");

  LikelihoodParams& l = c.likelihood;
  add(app, "likelihood.sigma_geo_m", l.sigma_geo_m, "Geolocation error standard deviation (m)");
  add(app, "likelihood.c_decay_h", l.c_decay_h, "Heat e-folding time (h)");
  add(app, "likelihood.p_false", l.p_false, "Detection probability of an unburned pixel");
  add(app, "likelihood.p_anchor", l.p_anchor, "Detection probability t_anchor_h after arrival");
  add(app, "likelihood.t_anchor_h", l.t_anchor_h, "Anchor lag (h)");
  add(app, "likelihood.l_window_h", l.l_window_h, "Arrival window before an overpass (h)");

  GraphConfig& g = c.estimate.graph;
  add(app, "graph.clusters", g.clusters, "k-means clusters");
  add(app, "graph.shorten", g.shorten, "Intra-cluster distance factor");
  add(app, "graph.speed_limit_mps", c.speed_limit_mps, "Maximum plausible spread rate; 0 disables");
  add(app, "graph.split_secondary", g.split_secondary, "Disconnect a small secondary fire");
  add(app, "graph.secondary_ratio", g.secondary_ratio, "Size ratio below which the split is applied");
  add(app, "graph.backdate_h", g.backdate_h, "Synthetic ignition lead before tied earliest detections (h)");
  add(app, "graph.kmeans_max_iter", g.kmeans_max_iter, "k-means iteration cap");

  DensifyConfig& d = c.estimate.densify;
  add(app, "spline.interpolate", c.estimate.interpolate, "Insert spline points along long path gaps");
  add(app, "spline.spacing_max_m", d.spacing_max_m, "Gap length that triggers insertion (m)");
  add(app, "spline.n_insert", d.n_insert, "Minimum points inserted per long gap");
  add(app, "spline.p", d.p, "Smoothing weight (1 interpolates)");

  EstimatorConfig& e = c.estimate.estimator;
  add(app, "estimator.kernel_sigma_cells", e.kernel_sigma_cells, "Smoothing width (evaluation cells)");
  add(app, "estimator.rd_threshold", e.rd_threshold, "Relative-difference stopping threshold");
  add(app, "estimator.max_iter", e.max_iter, "Iteration cap");
  add(app, "estimator.use_multigrid", e.use_multigrid, "Run coarse-to-fine levels");
  add(app, "estimator.start_spacing_m", e.multigrid.start_spacing_m, "Coarsest level spacing (m)");
  add(app, "estimator.shrink", e.multigrid.shrink, "Spacing factor between levels");
  add(app, "estimator.min_spacing_m", e.multigrid.min_spacing_m, "Finest level spacing (m)");
  add(app, "estimator.level_passes", e.level_passes, "Passes per coarse level; 0 iterates to convergence");
  add(app, "estimator.use_nonfire", e.use_nonfire, "Use non-fire pixels");
  add(app, "estimator.confidence_threshold", c.estimate.confidence_threshold, "Minimum detection confidence");
  add(app, "estimator.fallback_ros_mps", c.estimate.fallback_ros_mps, "Initial-estimate speed without path data");

  add(app, "fmc.burn_curve.fmc", c.burn_fmc, "Burn curve moisture samples (fraction)");
  add(app, "fmc.burn_curve.ros_rel", c.burn_ros_rel, "Burn curve relative rate of spread");
  add(app, "fmc.max_step", c.fmc_max_step, "Largest moisture change per adjustment");

  add(app, "ros.cutoff_mps", c.ros_cutoff_mps, "Rates above this are masked (m/s)");

  IgnitionSettings& i = c.ignition;
  add(app, "ignition.nx", i.nx, "Candidate columns");
  add(app, "ignition.ny", i.ny, "Candidate rows");
  add(app, "ignition.nt", i.nt, "Candidate times");
  add(app, "ignition.time_step_h", i.time_step_h, "Spacing of candidate times before the first detection (h)");
  add(app, "ignition.ros_mps", i.ros_mps, "Surrogate cone rate of spread");
  add(app, "ignition.refine_rounds", i.refine_rounds, "Refinement rounds around the winner");
  add(app, "ignition.smoothness_weight", i.smoothness_weight, "Smoothness penalty weight against the reference raster");
}

}  // namespace firefront::cli
