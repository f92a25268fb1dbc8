#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "firefront/assess.hpp"
#include "firefront/estimator.hpp"
#include "firefront/fmc.hpp"
#include "firefront/ignition.hpp"
#include "firefront/io.hpp"
#include "firefront/ros.hpp"
#include "json.hpp"
#include "run_config.hpp"

namespace firefront::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string csv_row(std::initializer_list<double> values) {
  std::string s;
  for (double v : values) {
    if (!s.empty()) s += ',';
    s += format_double(v);
  }
  return s;
}

void write_raster_file(const std::string& path, const Grid& grid, const std::vector<double>& values,
                       const std::vector<bool>* mask = nullptr) {
  std::ostringstream os;
  write_raster(os, grid, values, mask);
  write_text_file(path, os.str());
}

void write_field_file(const std::string& path, const FireArrivalField& field) {
  write_raster_file(path, field.grid(), {field.values().begin(), field.values().end()});
}

std::vector<Detection> only_fire(const std::vector<Detection>& dets) {
  std::vector<Detection> out;
  for (const Detection& d : dets) {
    if (d.kind == DetectionKind::Fire) out.push_back(d);
  }
  return out;
}

Json cone_json(const ConeSpec& cone) {
  Json lobes = Json::array();
  for (const Lobe& l : cone.lobes) {
    lobes.push_back({{"slope_days_per_m", l.slope},
                     {"direction_rad", l.direction},
                     {"aspect", l.aspect},
                     {"offset", l.offset}});
  }
  return {{"ignition_lat", cone.ignition.lat},
          {"ignition_lon", cone.ignition.lon},
          {"t0_days", cone.t0},
          {"lobes", lobes}};
}

// Each command returns its exit code; failures throw.

int cmd_generate(const RunConfig& cfg, std::uint64_t seed, const std::string& dir, std::ostream& out) {
  std::filesystem::create_directories(dir);
  const Scenario sc = make_scenario(cfg.scenario, seed);
  const std::filesystem::path base(dir);

  write_field_file((base / "truth.asc").string(), sc.truth);

  std::vector<Detection> dets = sc.fire;
  dets.insert(dets.end(), sc.nonfire.begin(), sc.nonfire.end());
  std::ostringstream csv;
  write_detections_csv(csv, dets);
  write_text_file((base / "detections.csv").string(), csv.str());

  const double t_last = sc.schedule.times.back();
  std::vector<GeoPoint> perimeter;
  for (const Detection& d : synth_perimeter(sc.truth, t_last, 100)) perimeter.push_back(d.pos);
  std::ostringstream per;
  write_polygon_csv(per, perimeter);
  write_text_file((base / "perimeter.csv").string(), per.str());

  Json manifest;
  manifest["command"] = "generate";
  manifest["seed"] = seed;
  manifest["grid"] = {{"nx", sc.grid.nx()},
                      {"ny", sc.grid.ny()},
                      {"spacing_m", sc.grid.spacing()},
                      {"t_start", sc.grid.domain().t_start},
                      {"t_end", sc.grid.domain().t_end}};
  manifest["cone"] = cone_json(sc.cone);
  manifest["granules"] = sc.schedule.times;
  manifest["perimeter_time_days"] = t_last;
  manifest["counts"] = {{"fire", sc.fire.size()}, {"nonfire", sc.nonfire.size()}};
  manifest["files"] = {"truth.asc", "detections.csv", "perimeter.csv"};
  write_text_file((base / "manifest.json").string(), manifest.dump(2) + "\n");

  out << "generated " << sc.fire.size() << " fire and " << sc.nonfire.size()
      << " non-fire detections in " << dir << '\n';
  return kExitOk;
}

int cmd_estimate(const RunConfig& cfg, std::uint64_t seed, const std::string& det_path,
                 const std::string& out_path, const std::string& rd_path, std::ostream& out) {
  const std::vector<Detection> dets = read_detections_csv(det_path);
  const EstimateResult r = estimate_fire_arrival(dets, cfg.grid(), cfg.estimate_options(seed));
  write_field_file(out_path, r.field);
  if (!rd_path.empty()) {
    std::string s = "level,spacing_m,rd\n";
    for (const RdRecord& h : r.history) {
      s += std::to_string(h.iter) + ',' + format_double(h.spacing_m) + ',' + format_double(h.rd) + '\n';
    }
    write_text_file(rd_path, s);
  }
  out << "fire " << r.fire_detections << " nonfire " << r.nonfire_detections << " dropped "
      << r.dropped << " inserted " << r.inserted << " unreachable " << r.unreachable
      << " levels " << r.history.size() << '\n';
  return kExitOk;
}

int cmd_assimilate(const RunConfig& cfg, const std::string& forecast_path, const std::string& det_path,
                   const std::string& out_path, std::ostream& out) {
  const FireArrivalField forecast =
      read_arrival_field(forecast_path, cfg.scenario.t_start, cfg.scenario.t_end);
  const std::vector<Detection> dets = read_detections_csv(det_path);
  EstimatorConfig ec = cfg.estimate.estimator;
  ec.alpha_mode = AlphaMode::Likelihood;
  const AssimilationResult r = assimilate(forecast, dets, cfg.likelihood, ec);
  write_field_file(out_path, r.analysis);
  out << "passes " << r.rd.size() << " final_rd " << format_double(r.rd.empty() ? 0.0 : r.rd.back())
      << '\n';
  return kExitOk;
}

int cmd_ros(const RunConfig& cfg, const std::string& field_path, const std::string& out_path,
            const std::string& direction_path, const std::string& moments_path, std::ostream& out) {
  const FireArrivalField field = read_arrival_field(field_path, cfg.scenario.t_start, cfg.scenario.t_end);
  const RosField rf = ros_field(field, cfg.ros_cutoff_mps);
  // Unburned nodes carry no spread rate.
  std::vector<bool> mask = rf.masked;
  for (std::size_t k = 0; k < mask.size(); ++k) mask[k] = mask[k] || !(field[k] < cfg.scenario.t_end);
  write_raster_file(out_path, rf.grid, rf.ros, &mask);
  if (!direction_path.empty()) write_raster_file(direction_path, rf.grid, rf.theta, &mask);

  Moments m;
  double lo = kInf;
  double hi = 0.0;
  for (std::size_t k = 0; k < mask.size(); ++k) {
    if (mask[k]) continue;
    m.push(rf.ros[k]);
    lo = std::min(lo, rf.ros[k]);
    hi = std::max(hi, rf.ros[k]);
  }
  std::ostringstream s;
  s << "cells,mean_mps,var_mps2,min_mps,max_mps\n";
  if (m.count > 0.0) {
    s << csv_row({m.count, m.mean, m.variance(), lo, hi}) << '\n';
  } else {
    s << "0,0,0,0,0\n";
  }
  if (!moments_path.empty()) write_text_file(moments_path, s.str());
  out << s.str();
  return kExitOk;
}

int cmd_assess(const RunConfig& cfg, const std::string& field_path, const std::string& truth_path,
               const std::string& perimeter_path, double t_ref, const std::string& out_path,
               const std::string& class_path, std::ostream& out) {
  const FireArrivalField est = read_arrival_field(field_path, cfg.scenario.t_start, cfg.scenario.t_end);
  const GranuleSchedule sched = cfg.schedule();
  if (std::isnan(t_ref)) t_ref = sched.times.back();
  std::ostringstream s;
  BurnMask observed;
  const BurnMask predicted = BurnMask::from_field(est, t_ref);
  if (!truth_path.empty()) {
    const FireArrivalField truth =
        read_arrival_field(truth_path, cfg.scenario.t_start, cfg.scenario.t_end);
    const AssessmentReport r = assess_fields(truth, est, t_ref, sched.times, cfg.ros_cutoff_mps);
    s << "t_ref,spacing_m,moe_x,moe_y,moe_norm,sorenson,rel_error,rge,mrd,srd,mdd,sdd\n"
      << csv_row({r.t_ref, r.spacing_m, r.moe_x, r.moe_y, r.moe_norm, r.sorenson,
                  r.rel_error.value_or(std::nan("")), r.rge, r.mrd, r.srd, r.mdd, r.sdd})
      << '\n';
    observed = BurnMask::from_field(truth, t_ref);
  } else {
    std::vector<PlanarPoint> poly;
    for (const GeoPoint& p : read_polygon_csv(perimeter_path)) {
      poly.push_back(est.grid().projection().forward(p));
    }
    observed = BurnMask::from_polygon(est.grid(), poly);
    const MoeResult m = moe(observed, predicted);
    s << "t_ref,spacing_m,moe_x,moe_y,moe_norm,sorenson\n"
      << csv_row({t_ref, est.grid().spacing(), m.x, m.y, std::hypot(m.x, m.y),
                  sorenson(observed, predicted)})
      << '\n';
  }
  if (!class_path.empty()) {
    write_raster_file(class_path, est.grid(), classification(observed, predicted));
  }
  if (!out_path.empty()) write_text_file(out_path, s.str());
  out << s.str();
  return kExitOk;
}

double burned_area(const FireArrivalField& f) {
  const double t_end = f.grid().domain().t_end;
  const double cell = f.grid().spacing() * f.grid().spacing();
  double n = 0.0;
  for (double v : f.values()) n += v < t_end ? 1.0 : 0.0;
  return n * cell;
}

int cmd_fmc(const RunConfig& cfg, const std::string& est_path, const std::string& fcst_path,
            double current_fmc, std::ostream& out, std::ostream& err) {
  const FireArrivalField est = read_arrival_field(est_path, cfg.scenario.t_start, cfg.scenario.t_end);
  const FireArrivalField fcst = read_arrival_field(fcst_path, cfg.scenario.t_start, cfg.scenario.t_end);
  const BurnCurve curve = cfg.burn_curve();
  const RosDifference diff = mean_ros_diff(ros_field(est, cfg.ros_cutoff_mps),
                                           ros_field(fcst, cfg.ros_cutoff_mps),
                                           overlap_mask(est, fcst), cfg.ros_cutoff_mps);
  const double a_est = burned_area(est);
  const double a_fcst = burned_area(fcst);
  const FmcAdjustment adj =
      fmc_adjustment(a_est, a_fcst, diff.mean_est, diff.mean_fcst, curve, current_fmc, cfg.fmc_max_step);
  if (adj.ratio_clamped) err << "warning: ROS ratio outside the burn curve; clamped\n";
  out << "est_area_m2,fcst_area_m2,mean_est_ros_mps,mean_fcst_ros_mps,delta_fmc\n"
      << csv_row({a_est, a_fcst, diff.mean_est, diff.mean_fcst, adj.delta}) << '\n';
  return kExitOk;
}

int cmd_ignition(const RunConfig& cfg, const std::string& det_path, const std::string& table_path,
                 const std::string& reference_path, std::ostream& out) {
  const std::vector<Detection> dets = read_detections_csv(det_path);
  const Grid grid = cfg.grid();
  const IgnitionSettings& is = cfg.ignition;
  double earliest = kInf;
  for (const Detection& d : dets) {
    if (d.kind == DetectionKind::Fire && grid.domain().contains(d.pos)) earliest = std::min(earliest, d.time);
  }
  if (!std::isfinite(earliest)) throw std::invalid_argument("ignition-search: no fire detections in the domain");
  std::vector<double> times;
  for (std::size_t k = is.nt; k >= 1; --k) {
    times.push_back(std::max(grid.domain().t_start, earliest - static_cast<double>(k) * is.time_step_h / kHoursPerDay));
  }
  times.erase(std::unique(times.begin(), times.end()), times.end());

  SearchOptions opt;
  opt.likelihood = cfg.likelihood;
  opt.smoothness_weight = is.smoothness_weight;
  if (!reference_path.empty()) {
    opt.reference = read_arrival_field(reference_path, cfg.scenario.t_start, cfg.scenario.t_end);
  }
  const ConeSpec shape = isotropic_cone(grid.domain().center(), 0.0, is.ros_mps);
  const SearchResult r =
      refined_search(grid.domain(), is.nx, is.ny, times, is.refine_rounds, dets, shape, grid, opt);
  if (!table_path.empty()) {
    std::string s = "lat,lon,t0_days,loglik\n";
    for (const ScoredCandidate& c : r.table) {
      s += csv_row({c.candidate.pos.lat, c.candidate.pos.lon, c.candidate.t0, c.score}) + '\n';
    }
    write_text_file(table_path, s);
  }
  const ScoredCandidate& w = r.winner();
  out << "lat,lon,t0_days,loglik\n"
      << csv_row({w.candidate.pos.lat, w.candidate.pos.lon, w.candidate.t0, w.score}) << '\n';
  return kExitOk;
}

int cmd_bench(const RunConfig& cfg, std::uint64_t seed, std::size_t scenarios,
              const std::string& out_path, std::ostream& out) {
  const EstimateOptions base = cfg.estimate_options(seed);
  std::vector<Strategy> strategies{multigrid_strategy(false), single_grid_strategy(),
                                   multigrid_strategy(true)};
  for (Strategy& s : strategies) {
    const EstimateOptions own = s.options;
    s.options = base;
    s.options.interpolate = own.interpolate;
    s.options.estimator.use_multigrid = own.estimator.use_multigrid;
    s.options.estimator.use_nonfire = own.estimator.use_nonfire;
  }
  const auto summaries = run_battery(cfg.scenario, strategies, scenarios, seed);
  const auto ranks = rank_sums(summaries);
  std::ostringstream s;
  s << "strategy,scenarios,mre,moe_x,moe_y,moe_norm,sorenson,rge,rank_sum\n";
  for (std::size_t q = 0; q < summaries.size(); ++q) {
    const ScenarioScore& m = summaries[q].mean;
    s << summaries[q].name << ','
      << csv_row({static_cast<double>(scenarios), m.mre, m.moe_x, m.moe_y, m.moe_norm, m.sorenson,
                  m.rge, ranks[q]})
      << '\n';
  }
  if (!out_path.empty()) write_text_file(out_path, s.str());
  out << s.str();
  const ScenarioScore& mg = summaries[0].mean;
  const bool accuracy = mg.mre <= 0.02 && mg.moe_x >= 0.85 && mg.moe_y >= 0.75 && mg.sorenson >= 0.80;
  out << "accuracy " << (accuracy ? "PASS" : "FAIL") << '\n'
      << "ordering " << (ranks[0] < ranks[1] ? "PASS" : "FAIL") << '\n'
      << "nonfire " << (summaries[2].mean.moe_y >= mg.moe_y ? "PASS" : "FAIL") << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fire arrival time estimation from satellite detections"};
  app.name("firefront");
  app.require_subcommand(1);
  RunConfig cfg;
  add_config_options(app, cfg);

  std::uint64_t seed = 0;
  std::string dir, detections, output, rd, forecast, field, direction, moments, truth, perimeter,
      classes, estimate, table, reference;
  double t_ref = std::nan("");
  double current_fmc = 0.0;
  std::size_t scenarios = 20;

  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  CLI::App* gen = sub("generate", "Synthetic cone scenario: truth raster, detections, perimeter, manifest");
  gen->add_option("--seed", seed, "Scenario seed")->required();
  gen->add_option("--out-dir", dir, "Output directory")->required();

  CLI::App* est = sub("estimate", "Estimate the fire arrival time from detections");
  est->add_option("--seed", seed, "Clustering seed")->required();
  est->add_option("--detections", detections, "Detection CSV")->required();
  est->add_option("--out", output, "Estimate raster")->required();
  est->add_option("--rd", rd, "Convergence history CSV");

  CLI::App* da = sub("assimilate", "Blend detections into a forecast arrival raster");
  da->add_option("--forecast", forecast, "Forecast raster")->required();
  da->add_option("--detections", detections, "Detection CSV")->required();
  da->add_option("--out", output, "Analysis raster")->required();

  CLI::App* ros = sub("ros", "Rate of spread from an arrival raster");
  ros->add_option("--field", field, "Arrival raster")->required();
  ros->add_option("--out", output, "Rate of spread raster (m/s)")->required();
  ros->add_option("--direction", direction, "Spread direction raster (radians)");
  ros->add_option("--moments", moments, "Summary CSV");

  CLI::App* as = sub("assess", "Compare an arrival raster with a truth raster or a perimeter");
  as->add_option("--field", field, "Estimated arrival raster")->required();
  auto* truth_opt = as->add_option("--truth", truth, "Truth arrival raster");
  auto* per_opt = as->add_option("--perimeter", perimeter, "Perimeter polygon CSV (lat,lon)");
  truth_opt->excludes(per_opt);
  as->add_option("--time", t_ref, "Assessment time (days); default last overpass");
  as->add_option("--out", output, "Report CSV");
  as->add_option("--classes", classes, "Classification raster");

  CLI::App* fmc = sub("fmc-adjust", "Fuel moisture change from estimated vs forecast spread");
  fmc->add_option("--estimate", estimate, "Data-estimated arrival raster")->required();
  fmc->add_option("--forecast", forecast, "Forecast arrival raster")->required();
  fmc->add_option("--fmc", current_fmc, "Current fuel moisture (fraction)")->required();

  CLI::App* ign = sub("ignition-search", "Grid search for the ignition point and time");
  ign->add_option("--detections", detections, "Detection CSV")->required();
  ign->add_option("--table", table, "Score table CSV");
  ign->add_option("--reference", reference, "Reference raster for the smoothness penalty");

  CLI::App* bench = sub("bench", "Synthetic battery comparing estimation strategies");
  bench->add_option("--seed", seed, "Battery seed")->required();
  bench->add_option("--scenarios", scenarios, "Number of scenarios")->capture_default_str();
  bench->add_option("--out", output, "Summary CSV");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalid;
  }

  try {
    if (*as && truth.empty() && perimeter.empty()) {
      throw std::invalid_argument("assess needs --truth or --perimeter");
    }
    if (*gen) return cmd_generate(cfg, seed, dir, out);
    if (*est) return cmd_estimate(cfg, seed, detections, output, rd, out);
    if (*da) return cmd_assimilate(cfg, forecast, detections, output, out);
    if (*ros) return cmd_ros(cfg, field, output, direction, moments, out);
    if (*as) return cmd_assess(cfg, field, truth, perimeter, t_ref, output, classes, out);
    if (*fmc) return cmd_fmc(cfg, estimate, forecast, current_fmc, out, err);
    if (*ign) return cmd_ignition(cfg, detections, table, reference, out);
    if (*bench) return cmd_bench(cfg, seed, scenarios, output, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace firefront::cli
