#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace firefront {

/// Discrete 1-D Gaussian truncated at 4 sigma; weights sum to 1.
struct GaussianKernel {
  explicit GaussianKernel(double sigma_cells);

  double sigma = 0.0;
  std::size_t radius = 0;
  std::vector<double> weights;  ///< size 2 * radius + 1, centered

  double at(long offset) const { return weights[static_cast<std::size_t>(offset + static_cast<long>(radius))]; }
};

/// Separable convolution of a row-major nx-by-ny array. At the edges the
/// weights are renormalized over the in-grid part of the stencil.
std::vector<double> separable_smooth(std::span<const double> values, std::size_t nx,
                                     std::size_t ny, const GaussianKernel& kernel);

/// Kernel-weighted average of `value_at(m)` around node (i, j), renormalized
/// over in-grid nodes. Equivalent to one entry of separable_smooth.
template <class F>
double kernel_average(std::size_t nx, std::size_t ny, std::size_t i, std::size_t j,
                      const GaussianKernel& kernel, F&& value_at) {
  const long r = static_cast<long>(kernel.radius);
  const long i0 = std::max(0L, static_cast<long>(i) - r);
  const long i1 = std::min(static_cast<long>(nx) - 1, static_cast<long>(i) + r);
  const long j0 = std::max(0L, static_cast<long>(j) - r);
  const long j1 = std::min(static_cast<long>(ny) - 1, static_cast<long>(j) + r);
  double num = 0.0;
  double den = 0.0;
  for (long jj = j0; jj <= j1; ++jj) {
    const double wy = kernel.at(jj - static_cast<long>(j));
    for (long ii = i0; ii <= i1; ++ii) {
      const double w = wy * kernel.at(ii - static_cast<long>(i));
      num += w * value_at(static_cast<std::size_t>(jj) * nx + static_cast<std::size_t>(ii));
      den += w;
    }
  }
  return num / den;
}

}  // namespace firefront
