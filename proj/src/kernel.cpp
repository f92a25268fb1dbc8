#include "firefront/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace firefront {

GaussianKernel::GaussianKernel(double sigma_cells) : sigma(sigma_cells) {
  if (!(sigma_cells > 0.0) || !std::isfinite(sigma_cells)) {
    throw std::invalid_argument("kernel sigma must be positive");
  }
  radius = static_cast<std::size_t>(std::ceil(4.0 * sigma_cells));
  weights.resize(2 * radius + 1);
  double sum = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double d = static_cast<double>(k) - static_cast<double>(radius);
    weights[k] = std::exp(-0.5 * d * d / (sigma_cells * sigma_cells));
    sum += weights[k];
  }
  for (double& w : weights) w /= sum;
}

namespace {

// One pass along lines of length n; `stride` steps between neighbours and
// `lines` lines start at multiples of `line_step`.
void smooth_pass(const double* src, double* dst, std::size_t n, std::size_t stride,
                 std::size_t lines, std::size_t line_step, const GaussianKernel& kernel) {
  const long r = static_cast<long>(kernel.radius);
  const long len = static_cast<long>(n);
  for (std::size_t line = 0; line < lines; ++line) {
    const double* s = src + line * line_step;
    double* d = dst + line * line_step;
    for (long p = 0; p < len; ++p) {
      const long a = std::max(0L, p - r);
      const long b = std::min(len - 1, p + r);
      double num = 0.0;
      double den = 0.0;
      for (long q = a; q <= b; ++q) {
        const double w = kernel.at(q - p);
        num += w * s[static_cast<std::size_t>(q) * stride];
        den += w;
      }
      d[static_cast<std::size_t>(p) * stride] = num / den;
    }
  }
}

}  // namespace

std::vector<double> separable_smooth(std::span<const double> values, std::size_t nx,
                                     std::size_t ny, const GaussianKernel& kernel) {
  if (values.size() != nx * ny) throw std::invalid_argument("separable_smooth: size mismatch");
  std::vector<double> tmp(values.size());
  std::vector<double> out(values.size());
  smooth_pass(values.data(), tmp.data(), nx, 1, ny, nx, kernel);
  smooth_pass(tmp.data(), out.data(), ny, nx, nx, 1, kernel);
  return out;
}

}  // namespace firefront
