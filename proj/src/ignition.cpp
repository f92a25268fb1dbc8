#include "firefront/ignition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "firefront/parallel.hpp"

namespace firefront {

std::vector<IgnitionCandidate> candidate_grid(const FireDomain& domain, std::size_t nx,
                                              std::size_t ny, std::span<const double> times) {
  domain.validate();
  if (nx == 0 || ny == 0 || times.empty()) {
    throw std::invalid_argument("candidate grid needs nx, ny >= 1 and at least one time");
  }
  const double dlat = (domain.lat_max - domain.lat_min) / static_cast<double>(ny);
  const double dlon = (domain.lon_max - domain.lon_min) / static_cast<double>(nx);
  std::vector<IgnitionCandidate> out;
  out.reserve(nx * ny * times.size());
  for (double t : times) {
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t i = 0; i < nx; ++i) {
        out.push_back({{domain.lat_min + (static_cast<double>(j) + 0.5) * dlat,
                        domain.lon_min + (static_cast<double>(i) + 0.5) * dlon},
                       t});
      }
    }
  }
  return out;
}

FireArrivalField surrogate_forecast(const IgnitionCandidate& candidate, const ConeSpec& shape,
                                    const Grid& grid) {
  ConeSpec spec = shape;
  spec.ignition = candidate.pos;
  spec.t0 = candidate.t0;
  return cone_field(spec, grid);
}

SearchResult grid_search(std::span<const IgnitionCandidate> candidates,
                         const std::vector<Detection>& detections, const ConeSpec& shape,
                         const Grid& grid, const SearchOptions& options) {
  if (candidates.empty()) throw std::invalid_argument("grid_search: no candidates");
  if (detections.empty()) throw std::invalid_argument("grid_search: no detections");
  options.likelihood.validate();
  const bool penalize = options.reference.has_value() && options.smoothness_weight != 0.0;
  if (penalize && !options.reference->grid().same_geometry(grid)) {
    throw std::invalid_argument("grid_search: reference grid mismatch");
  }
  const SnappedDetections snapped = snap_detections(grid, detections);
  if (snapped.size() == 0) throw std::invalid_argument("grid_search: no detections inside the domain");

  SearchResult res;
  res.table.resize(candidates.size());
  parallel_for(candidates.size(), [&](std::size_t q) {
    const FireArrivalField f = surrogate_forecast(candidates[q], shape, grid);
    double score = dataset_log_likelihood(f, snapped, options.likelihood);
    if (penalize) score -= smoothness_penalty(f, *options.reference, options.smoothness_weight);
    res.table[q] = {candidates[q], score};
  });
  for (std::size_t q = 1; q < res.table.size(); ++q) {
    const ScoredCandidate& c = res.table[q];
    const ScoredCandidate& b = res.table[res.best];
    if (c.score > b.score || (c.score == b.score && c.candidate.t0 < b.candidate.t0)) res.best = q;
  }
  return res;
}

std::vector<IgnitionCandidate> refine_candidates(const IgnitionCandidate& center,
                                                 const FireDomain& domain, double cell_dlat,
                                                 double cell_dlon, double dt, std::size_t nx,
                                                 std::size_t ny, std::size_t nt) {
  if (nx == 0 || ny == 0 || nt == 0) throw std::invalid_argument("refinement needs counts >= 1");
  FireDomain box = domain;
  box.lat_min = std::max(domain.lat_min, center.pos.lat - cell_dlat);
  box.lat_max = std::min(domain.lat_max, center.pos.lat + cell_dlat);
  box.lon_min = std::max(domain.lon_min, center.pos.lon - cell_dlon);
  box.lon_max = std::min(domain.lon_max, center.pos.lon + cell_dlon);
  std::vector<double> times;
  if (nt == 1 || !(dt > 0.0)) {
    times.push_back(center.t0);
  } else {
    for (std::size_t k = 0; k < nt; ++k) {
      times.push_back(center.t0 - dt + 2.0 * dt * static_cast<double>(k) / static_cast<double>(nt - 1));
    }
  }
  std::vector<IgnitionCandidate> out{center};
  if (!(box.lat_min < box.lat_max) || !(box.lon_min < box.lon_max)) return out;
  for (const IgnitionCandidate& c : candidate_grid(box, nx, ny, times)) out.push_back(c);
  return out;
}

SearchResult refined_search(const FireDomain& domain, std::size_t nx, std::size_t ny,
                            std::span<const double> times, std::size_t rounds,
                            const std::vector<Detection>& detections, const ConeSpec& shape,
                            const Grid& grid, const SearchOptions& options) {
  SearchResult res = grid_search(candidate_grid(domain, nx, ny, times), detections, shape, grid, options);
  double dlat = (domain.lat_max - domain.lat_min) / static_cast<double>(ny);
  double dlon = (domain.lon_max - domain.lon_min) / static_cast<double>(nx);
  double dt = 0.0;
  if (times.size() > 1) {
    dt = (*std::max_element(times.begin(), times.end()) - *std::min_element(times.begin(), times.end())) /
         static_cast<double>(times.size() - 1);
  }
  const std::size_t nt = times.size() > 1 ? 5 : 1;
  for (std::size_t r = 0; r < rounds; ++r) {
    const auto refined = refine_candidates(res.winner().candidate, domain, dlat, dlon, dt, 5, 5, nt);
    SearchResult next = grid_search(refined, detections, shape, grid, options);
    // The previous winner is candidate 0 and keeps its score.
    res = std::move(next);
    dlat *= 0.4;
    dlon *= 0.4;
    dt *= 0.4;
  }
  return res;
}

}  // namespace firefront
