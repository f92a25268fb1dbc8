#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "firefront/detection.hpp"
#include "firefront/grid.hpp"
#include "firefront/likelihood.hpp"
#include "firefront/synth.hpp"

namespace firefront {

struct IgnitionCandidate {
  GeoPoint pos{};
  double t0 = 0.0;
};

/// Cell-centered nx x ny positions over the domain box at each time. Order:
/// time outermost, then rows south to north, then columns west to east.
std::vector<IgnitionCandidate> candidate_grid(const FireDomain& domain, std::size_t nx,
                                              std::size_t ny, std::span<const double> times);

/// The template cone moved to the candidate's position and time.
FireArrivalField surrogate_forecast(const IgnitionCandidate& candidate, const ConeSpec& shape,
                                    const Grid& grid);

struct SearchOptions {
  LikelihoodParams likelihood{};
  /// Smoothness reference; the penalty is skipped when absent or weight is 0.
  std::optional<FireArrivalField> reference;
  double smoothness_weight = 0.0;
};

struct ScoredCandidate {
  IgnitionCandidate candidate;
  double score = 0.0;
};

struct SearchResult {
  std::size_t best = 0;  ///< index into table
  std::vector<ScoredCandidate> table;

  const ScoredCandidate& winner() const { return table[best]; }
};

/// Objective per candidate: log-likelihood of the detections under the
/// surrogate forecast, minus the smoothness penalty when configured. Ties go
/// to the earliest t0, then to candidate order.
SearchResult grid_search(std::span<const IgnitionCandidate> candidates,
                         const std::vector<Detection>& detections, const ConeSpec& shape,
                         const Grid& grid, const SearchOptions& options);

/// Candidates on a finer nx x ny x nt lattice spanning +/- one coarse cell and
/// +/- one coarse time step around `center`, clipped to the domain. `center`
/// itself is always included (first).
std::vector<IgnitionCandidate> refine_candidates(const IgnitionCandidate& center,
                                                 const FireDomain& domain, double cell_dlat,
                                                 double cell_dlon, double dt, std::size_t nx,
                                                 std::size_t ny, std::size_t nt);

/// Coarse search followed by `rounds` refinements around the current winner.
SearchResult refined_search(const FireDomain& domain, std::size_t nx, std::size_t ny,
                            std::span<const double> times, std::size_t rounds,
                            const std::vector<Detection>& detections, const ConeSpec& shape,
                            const Grid& grid, const SearchOptions& options);

}  // namespace firefront
