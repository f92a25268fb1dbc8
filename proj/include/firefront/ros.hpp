#pragma once

#include <cstdint>
#include <vector>

#include "firefront/grid.hpp"

namespace firefront {

struct Gradient {
  std::vector<double> tx;  ///< field units per meter, eastward
  std::vector<double> ty;  ///< northward
};

/// Central differences inside, one-sided at the edges.
Gradient gradient(const FireArrivalField& field);

struct RosField {
  Grid grid;
  std::vector<double> tx;
  std::vector<double> ty;
  std::vector<double> ros;    ///< m/s (0 where masked)
  std::vector<double> theta;  ///< direction of increasing arrival time, radians
  std::vector<bool> masked;
};

/// Rate of spread 1 / (|grad T| * seconds_per_unit). Cells with a vanishing
/// gradient or a rate above `cutoff_mps` are masked.
RosField ros_field(const FireArrivalField& field, double cutoff_mps = 2.0,
                   double seconds_per_unit = kSecondsPerDay);

/// Arrival-time difference of two detections, each uniform over the window of
/// length l ending at its overpass: triangular on [c - l, c + l].
double time_diff_pdf(double t, double t1, double t2, double l);

/// Distribution of S = 1 / dt for the triangular dt with center c and half-width l.
double recip_cdf(double s, double c, double l);
double recip_pdf(double s, double c, double l);
double expected_s(double c, double l);
double expected_s2(double c, double l);
double var_s(double c, double l);

/// Normal density of the signed distance between two detections.
double distance_diff_density(double z, double d, double sigma1, double sigma2);

/// Inputs of the rate-of-spread variance: distances in meters, times in hours.
struct RosUncertaintyInputs {
  double d = 0.0;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  double l = 6.0;

  double c() const { return t2 - t1; }
  void validate() const;
};

/// Var[R] = (d^2 + s1^2 + s2^2) E[S^2] - d^2 E[S]^2 in (m/h)^2.
double var_ros(const RosUncertaintyInputs& in);
/// E[R] = d E[S] in m/h.
double mean_ros(const RosUncertaintyInputs& in);

struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;  ///< sum of squared deviations

  void push(double x);
  void merge(const Moments& other);
  double variance() const { return count > 1.0 ? m2 / count : 0.0; }
};

struct McRosResult {
  Moments r;  ///< R = D / T, m/h
  Moments s;  ///< S = 1 / T, 1/h
  Moments s2;  ///< S^2
  std::uint64_t rejected = 0;
};

/// Monte Carlo draws of D ~ N(d, s1^2 + s2^2) and T = U2 - U1 with Ui uniform
/// on [ti - l, ti], rejecting T <= 0. Sharded over a fixed number of streams
/// derived from `seed`, so the result is independent of the thread count.
McRosResult mc_ros_sample(const RosUncertaintyInputs& in, std::uint64_t n, std::uint64_t seed);

}  // namespace firefront
