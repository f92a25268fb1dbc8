#include "firefront/spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace firefront {

namespace {

// Solves A x = b for symmetric positive definite A with bandwidth 2, given
// by its diagonal d, first off-diagonal e and second off-diagonal g (LDL^T).
std::vector<double> solve_pentadiagonal(std::vector<double> d, std::vector<double> e,
                                        std::vector<double> g, std::vector<double> b) {
  const std::size_t n = d.size();
  // Factor in place: A = L D L^T with unit lower L having sub-diagonals l1, l2.
  std::vector<double> l1(n, 0.0);
  std::vector<double> l2(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double di = d[i];
    if (i >= 1) di -= l1[i - 1] * l1[i - 1] * d[i - 1];
    if (i >= 2) di -= l2[i - 2] * l2[i - 2] * d[i - 2];
    d[i] = di;
    if (!(di > 0.0)) throw std::runtime_error("smoothing spline system not positive definite");
    if (i + 1 < n) {
      double v = e[i];
      if (i >= 1) v -= l1[i - 1] * l2[i - 1] * d[i - 1];
      l1[i] = v / di;
    }
    if (i + 2 < n) l2[i] = g[i] / di;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= 1) b[i] -= l1[i - 1] * b[i - 1];
    if (i >= 2) b[i] -= l2[i - 2] * b[i - 2];
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= d[i];
  for (std::size_t k = n; k-- > 0;) {
    if (k + 1 < n) b[k] -= l1[k] * b[k + 1];
    if (k + 2 < n) b[k] -= l2[k] * b[k + 2];
  }
  return b;
}

}  // namespace

SmoothingSpline::SmoothingSpline(std::span<const double> s, std::span<const double> y,
                                 std::span<const double> w, double p)
    : s_(s.begin(), s.end()) {
  const std::size_t n = s.size();
  if (n < 2) throw std::invalid_argument("smoothing spline needs at least 2 points");
  if (y.size() != n || w.size() != n) throw std::invalid_argument("spline input size mismatch");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("smoothing parameter must be in [0, 1]");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(s[i + 1] > s[i])) throw std::invalid_argument("spline knots must strictly increase");
  }
  for (double wi : w) {
    if (!(wi > 0.0)) throw std::invalid_argument("spline weights must be positive");
  }
  m_.assign(n, 0.0);

  if (p == 0.0 || n == 2) {
    // Weighted least-squares line (exact interpolation when n == 2).
    double sw = 0.0;
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sw += w[i];
      sx += w[i] * s[i];
      sy += w[i] * y[i];
    }
    const double mx = sx / sw;
    const double my = sy / sw;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sxx += w[i] * (s[i] - mx) * (s[i] - mx);
      sxy += w[i] * (s[i] - mx) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    f_.resize(n);
    for (std::size_t i = 0; i < n; ++i) f_[i] = my + slope * (s[i] - mx);
    return;
  }

  const double lambda = (1.0 - p) / p;
  const std::size_t m = n - 2;
  std::vector<double> h(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) h[i] = s[i + 1] - s[i];

  // Q is n x m with column c touching rows c, c+1, c+2.
  auto q = [&](std::size_t c, std::size_t r) -> double {
    if (r == c) return 1.0 / h[c];
    if (r == c + 1) return -1.0 / h[c] - 1.0 / h[c + 1];
    if (r == c + 2) return 1.0 / h[c + 1];
    return 0.0;
  };
  std::vector<double> diag(m), off1(m, 0.0), off2(m, 0.0), rhs(m);
  for (std::size_t c = 0; c < m; ++c) {
    double d = (h[c] + h[c + 1]) / 3.0;
    for (std::size_t r = c; r <= c + 2; ++r) d += lambda * q(c, r) * q(c, r) / w[r];
    diag[c] = d;
    if (c + 1 < m) {
      double v = h[c + 1] / 6.0;
      for (std::size_t r = c + 1; r <= c + 2; ++r) v += lambda * q(c, r) * q(c + 1, r) / w[r];
      off1[c] = v;
    }
    if (c + 2 < m) off2[c] = lambda * q(c, c + 2) * q(c + 2, c + 2) / w[c + 2];
    rhs[c] = q(c, c) * y[c] + q(c, c + 1) * y[c + 1] + q(c, c + 2) * y[c + 2];
  }
  const std::vector<double> gamma = solve_pentadiagonal(diag, off1, off2, rhs);
  f_.assign(y.begin(), y.end());
  for (std::size_t c = 0; c < m; ++c) {
    m_[c + 1] = gamma[c];
    for (std::size_t r = c; r <= c + 2; ++r) f_[r] -= lambda * q(c, r) * gamma[c] / w[r];
  }
}

double SmoothingSpline::operator()(double s) const {
  const std::size_t n = s_.size();
  if (s <= s_.front()) {
    const double slope = (f_[1] - f_[0]) / (s_[1] - s_[0]) - (s_[1] - s_[0]) * m_[1] / 6.0;
    return f_[0] + slope * (s - s_.front());
  }
  if (s >= s_.back()) {
    const double h = s_[n - 1] - s_[n - 2];
    const double slope = (f_[n - 1] - f_[n - 2]) / h + h * m_[n - 2] / 6.0;
    return f_[n - 1] + slope * (s - s_.back());
  }
  const auto it = std::upper_bound(s_.begin(), s_.end(), s);
  const std::size_t i = static_cast<std::size_t>(it - s_.begin()) - 1;
  const double h = s_[i + 1] - s_[i];
  const double a = (s_[i + 1] - s) / h;
  const double b = (s - s_[i]) / h;
  return a * f_[i] + b * f_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double SmoothingSpline::roughness() const {
  // f'' is piecewise linear between knot curvatures.
  double r = 0.0;
  for (std::size_t i = 0; i + 1 < s_.size(); ++i) {
    const double h = s_[i + 1] - s_[i];
    r += h * (m_[i] * m_[i] + m_[i] * m_[i + 1] + m_[i + 1] * m_[i + 1]) / 3.0;
  }
  return r;
}

double SmoothingSpline::functional(std::span<const double> y, std::span<const double> w,
                                   double p) const {
  double fit = 0.0;
  for (std::size_t i = 0; i < f_.size(); ++i) fit += w[i] * (y[i] - f_[i]) * (y[i] - f_[i]);
  return p * fit + (1.0 - p) * roughness();
}

PathSpline::PathSpline(std::span<const GraphVertex> path, const LocalProjection& proj, double p)
    : proj_(proj) {
  if (path.size() < 2) throw std::invalid_argument("path spline needs at least 2 vertices");
  arclen_.assign(path.size(), 0.0);
  for (std::size_t i = 1; i < path.size(); ++i) {
    arclen_[i] = arclen_[i - 1] + great_circle_distance(path[i - 1].pos, path[i].pos);
  }
  std::vector<double> s, x, y, t, w;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const PlanarPoint q = proj.forward(path[i].pos);
    if (!s.empty() && arclen_[i] == s.back()) {
      const double k = w.back();
      x.back() = (x.back() * k + q.x) / (k + 1.0);
      y.back() = (y.back() * k + q.y) / (k + 1.0);
      t.back() = (t.back() * k + path[i].time) / (k + 1.0);
      w.back() = k + 1.0;
      continue;
    }
    s.push_back(arclen_[i]);
    x.push_back(q.x);
    y.push_back(q.y);
    t.push_back(path[i].time);
    w.push_back(1.0);
  }
  if (s.size() < 2) throw std::invalid_argument("path spline needs 2 distinct positions");
  channels_.emplace_back(s, x, w, p);
  channels_.emplace_back(s, y, w, p);
  channels_.emplace_back(s, t, w, p);
}

PathPoint PathSpline::at(double s) const {
  PathPoint out;
  out.pos = proj_.inverse({channels_[0](s), channels_[1](s)});
  out.time = channels_[2](s);
  out.inserted = true;
  return out;
}

std::vector<PathPoint> densify_path(std::span<const GraphVertex> path,
                                    const LocalProjection& proj, const DensifyConfig& config) {
  if (path.empty()) throw std::invalid_argument("densify_path: empty path");
  if (!(config.spacing_max_m > 0.0)) throw std::invalid_argument("spacing_max must be positive");
  std::vector<PathPoint> out;
  out.push_back({path[0].pos, path[0].time, false});
  if (path.size() < 2) return out;

  bool needs_spline = false;
  std::vector<double> gap(path.size() - 1);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    gap[i] = great_circle_distance(path[i].pos, path[i + 1].pos);
    needs_spline = needs_spline || gap[i] > config.spacing_max_m;
  }
  if (!needs_spline) {
    for (std::size_t i = 1; i < path.size(); ++i) out.push_back({path[i].pos, path[i].time, false});
    return out;
  }
  const PathSpline spline(path, proj, config.p);
  const auto& s = spline.arclength();
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (gap[i] > config.spacing_max_m) {
      std::size_t count = std::max<std::size_t>(
          config.n_insert,
          static_cast<std::size_t>(std::ceil(gap[i] / config.spacing_max_m)) - 1);
      std::vector<PathPoint> pts;
      // Grow the count until every sub-chord fits; the spline may bow out.
      for (;;) {
        pts.clear();
        GeoPoint prev = path[i].pos;
        bool fits = true;
        for (std::size_t q = 1; q <= count; ++q) {
          const double frac = static_cast<double>(q) / static_cast<double>(count + 1);
          pts.push_back(spline.at(s[i] + frac * (s[i + 1] - s[i])));
          fits = fits && great_circle_distance(prev, pts.back().pos) <= config.spacing_max_m;
          prev = pts.back().pos;
        }
        fits = fits && great_circle_distance(prev, path[i + 1].pos) <= config.spacing_max_m;
        if (fits || count > 64 * (config.n_insert + 1)) break;
        ++count;
      }
      double floor_t = out.back().time;
      for (PathPoint& q : pts) {
        q.time = std::clamp(q.time, floor_t, std::max(floor_t, path[i + 1].time));
        floor_t = q.time;
        out.push_back(q);
      }
    }
    out.push_back({path[i + 1].pos, path[i + 1].time, false});
  }
  return out;
}

}  // namespace firefront
