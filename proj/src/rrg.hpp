#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "environment.hpp"

namespace inash {

using Rng = std::mt19937_64;

class SamplingError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Rooted DAG of sampled states for one robot. Vertex 0 is the root; every
/// edge points from an earlier-inserted vertex to a later one, and vertices
/// and edges are append-only.
class RandomGraph
{
public:
  struct Edge
  {
    std::size_t to;
    double length;
  };

  explicit RandomGraph(Point2 root, double cell_size = 1.0);

  std::size_t size() const { return vertices_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  Point2 vertex(std::size_t i) const { return vertices_[i]; }
  const std::vector<Point2>& vertices() const { return vertices_; }
  const std::vector<Edge>& out_edges(std::size_t i) const { return out_[i]; }
  std::size_t in_degree(std::size_t i) const { return in_degree_[i]; }

  std::size_t add_vertex(Point2 p);
  /// Requires from < to (keeps insertion order a topological order).
  void add_edge(std::size_t from, std::size_t to);

  /// Closest vertex; ties go to the smaller insertion index.
  std::size_t nearest(Point2 x) const;
  /// All vertices within the closed ball, ascending by index.
  std::vector<std::size_t> near_vertices(Point2 x, double radius) const;

  int iteration = 0;

private:
  using CellKey = std::int64_t;
  CellKey key(std::int64_t cx, std::int64_t cy) const { return (cx << 32) ^ (cy & 0xffffffff); }
  std::int64_t cell_of(double v) const { return static_cast<std::int64_t>(std::floor(v / cell_)); }

  double cell_;
  std::vector<Point2> vertices_;
  std::vector<std::vector<Edge>> out_;
  std::vector<std::size_t> in_degree_;
  std::size_t edge_count_ = 0;
  std::unordered_map<CellKey, std::vector<std::size_t>> grid_;
  std::int64_t min_cx_ = 0, max_cx_ = 0, min_cy_ = 0, max_cy_ = 0;
};

/// Shrinking connection radius min{gamma (log k / k)^(1/n), eta}.
struct RadiusSchedule
{
  double gamma = 1.0;
  double eta = 1.0;
  int dimension = 2;
};

double connection_radius(const RadiusSchedule& s, int k);

/// gamma = 2 ((1 + 1/n) area(free) / pi)^(1/n), with the free area of the
/// inflated workspace estimated by Monte Carlo.
double default_gamma(const Workspace& w, const RobotSpec& r, Rng& rng, int samples = 100000);

/// Uniform rejection sample from the robot's free space.
Point2 sample(const Workspace& w, const RobotSpec& r, Rng& rng, int max_rejections = 100000);

Point2 steer(Point2 x, Point2 y, double eta);

struct ExtendOptions
{
  // Reproduce the printed procedure literally: only the (nearest, new) edge.
  bool strict_nearest_only_edges = false;
};

/// One extension toward x_rand. Returns the new vertex index, or nothing when
/// the segment from the nearest vertex is blocked (graph unchanged).
std::optional<std::size_t> extend(RandomGraph& g, const Workspace& w, const RobotSpec& r, Point2 x_rand,
                                  const RadiusSchedule& sched, int k, const ExtendOptions& opts = {});

using VertexPath = std::vector<std::size_t>;

struct GoalPaths
{
  std::vector<VertexPath> paths;
  bool truncated = false;
};

/// Root-to-goal paths, each cut at its first goal vertex, in depth-first
/// order by ascending target index. Stops after `cap` paths.
GoalPaths goal_paths(const RandomGraph& g, const RobotSpec& r, std::size_t cap);

/// Number of such paths, saturating at UINT64_MAX.
std::uint64_t count_goal_paths(const RandomGraph& g, const RobotSpec& r);

struct RankedPath
{
  double length;
  VertexPath vertices;
};

/// The k shortest goal paths (by length), ascending; exact DAG dynamic program.
std::vector<RankedPath> cheapest_goal_paths(const RandomGraph& g, const RobotSpec& r, std::size_t k);

bool has_goal_vertex(const RandomGraph& g, const RobotSpec& r);

} // namespace inash
