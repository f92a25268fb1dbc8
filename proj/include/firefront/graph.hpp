#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "firefront/detection.hpp"
#include "firefront/geo.hpp"

namespace firefront {

/// Dense square matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Pairwise great-circle distances in meters.
Matrix distance_matrix(std::span<const GeoPoint> pts);
/// Pairwise Euclidean distances.
Matrix distance_matrix(std::span<const PlanarPoint> pts);
/// Entry (i, j) = times[j] - times[i].
Matrix time_matrix(std::span<const double> times);

struct ClusterAssignment {
  std::size_t k = 0;
  std::vector<std::size_t> label;
  std::vector<PlanarPoint> centroid;
  std::vector<double> wcss_history;  ///< within-cluster sum of squares after each iteration
  std::size_t iterations = 0;

  double wcss() const { return wcss_history.empty() ? 0.0 : wcss_history.back(); }
};

/// Lloyd's algorithm from k distinct seeded starting points. An emptied
/// cluster is moved to the point farthest from its current centroid.
ClusterAssignment kmeans(std::span<const PlanarPoint> pts, std::size_t k, std::size_t max_iter,
                         std::uint64_t seed);

/// Scales distances between members of the same cluster by `m`.
Matrix shorten_intra_cluster(const Matrix& d, std::span<const std::size_t> labels, double m);

/// Removes (sets to infinity) pairs whose implied speed exceeds `r_max_mps`.
/// `tmat` is in days.
Matrix apply_speed_limit(const Matrix& d, const Matrix& tmat, double r_max_mps);

struct SecondarySplit {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> removed;
};

/// Splits the points into two k-means clusters and flags the smaller one when
/// it holds fewer than ratio * n points.
SecondarySplit split_secondary_fire(std::span<const PlanarPoint> pts, double ratio,
                                    std::uint64_t seed);

struct GraphVertex {
  GeoPoint pos{};
  double time = 0.0;  ///< days
};

struct Ignition {
  GraphVertex vertex{};
  bool synthetic = false;
  std::size_t index = 0;  ///< index into the input when not synthetic
};

/// The earliest detection, or a synthetic point at the mean position of
/// simultaneous earliest detections, backdated by `backdate_h` hours.
Ignition infer_ignition(std::span<const GraphVertex> verts, double backdate_h);

struct GraphConfig {
  std::size_t clusters = 20;
  double shorten = 0.25;
  double speed_limit_mps = kInf;
  bool split_secondary = false;
  double secondary_ratio = 0.1;
  double backdate_h = 6.0;
  std::size_t kmeans_max_iter = 100;
  std::uint64_t seed = 1;
};

/// Time-ordered weighted digraph. Edge i -> j exists iff time j > time i and
/// weight(i, j) is finite.
struct DetectionGraph {
  std::vector<GraphVertex> vertices;
  Matrix weight;
  std::vector<std::size_t> cluster_label;
  std::vector<std::size_t> removed;  ///< disconnected secondary-fire vertices
  std::size_t ignition = 0;
  bool synthetic_ignition = false;

  std::size_t size() const { return vertices.size(); }
  bool has_edge(std::size_t i, std::size_t j) const {
    return vertices[j].time > vertices[i].time && weight(i, j) < kInf;
  }
};

/// Builds the graph over the given vertices (already confidence-filtered fire
/// detections); `proj` supplies the planar frame for clustering. A synthetic
/// ignition, when needed, is appended as the last vertex.
DetectionGraph build_detection_graph(std::vector<GraphVertex> verts, const LocalProjection& proj,
                                     const GraphConfig& config);

/// Convenience: graph vertices from the fire detections of `dets`.
std::vector<GraphVertex> fire_vertices(const std::vector<Detection>& dets);

/// Shortest-path tree from one source.
struct PathSet {
  std::vector<GraphVertex> vertices;
  std::size_t ignition = 0;
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> predecessor;  ///< kNone for the source and unreachable vertices
  std::vector<double> length;           ///< kInf when unreachable
  std::vector<std::size_t> hops;

  bool reachable(std::size_t v) const { return length[v] < kInf; }
  std::vector<std::size_t> unreachable() const;
  /// Vertex sequence from the source to `v` (empty when unreachable).
  std::vector<std::size_t> path_to(std::size_t v) const;
  /// One path per reachable vertex other than the source, by vertex index.
  std::vector<std::vector<std::size_t>> paths() const;
  /// Number of paths through each vertex (the size of its subtree).
  std::vector<std::size_t> multiplicity() const;
};

/// Dijkstra with deterministic ties: shorter, then fewer hops, then lower
/// predecessor index.
PathSet shortest_paths(const DetectionGraph& graph, std::size_t source);

/// Per-edge rate of spread (m/s) along the tree edges, ordered by child index.
std::vector<double> path_ros(const PathSet& paths);

}  // namespace firefront
