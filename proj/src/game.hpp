#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "environment.hpp"
#include "rrg.hpp"
#include "tasks.hpp"
#include "trajectory.hpp"

namespace inash {

/// Nonnegative p-dimensional cost. TOP (all +inf) stands for "no path yet".
struct CostVector
{
  std::vector<double> components;

  static CostVector top(std::size_t p);
  static CostVector zeros(std::size_t p);

  std::size_t size() const { return components.size(); }
  bool is_top() const;
  double scalar() const;
  double operator[](std::size_t i) const { return components[i]; }
  CostVector& operator+=(const CostVector& o);
  friend bool operator==(const CostVector&, const CostVector&) = default;
};

/// Componentwise a <= b. Throws std::invalid_argument on dimension mismatch.
bool pleq(const CostVector& a, const CostVector& b);
/// Strict companion: pleq(a, b) and a != b.
bool plt(const CostVector& a, const CostVector& b);

enum class CostMode
{
  Length,         // p = 1: Euclidean length
  LengthAndTime,  // p = 2: length, traversal time
};

std::size_t cost_dimension(CostMode m);
CostVector path_cost(const TimedPath& path, CostMode m);

using PathSet = std::vector<const TimedPath*>;

/// Exact space-time clearance test between two timed discs:
/// |a(t) - b(t)| >= r_a + r_b + margin for every t in the shared window.
bool collision_free_pair(const TimedPath& a, const TimedPath& b, double margin);

/// The CollisionFreePath primitive: true (encoded 1) iff `path` keeps
/// clearance from every path in `others`. Increments *calls when given.
bool collision_free_path(const TimedPath& path, const PathSet& others, double margin,
                         std::uint64_t* calls = nullptr);

/// True iff the disc moving linearly p0 -> p1 over [t0, t1] keeps clearance
/// from `other` during that window.
bool interval_clear(Point2 p0, Point2 p1, double t0, double t1, double radius, const TimedPath& other,
                    double margin);

struct PlannedPath
{
  VertexPath vertex_ids;
  TimedPath path;
  CostVector cost;
};

enum class Algorithm
{
  INash,
  Prioritized,
  AnytimePrioritized,
  IOptimal,
};

std::string algorithm_name(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

struct PlannerOptions
{
  int iterations = 300;
  std::optional<std::uint64_t> seed;  // falls back to the scenario seed
  double margin = 0.0;
  std::size_t path_cap = 10000;
  bool best_response = false;
  bool goal_by_center = true;
  bool strict_nearest_only_edges = false;
  bool inactive_as_static = false;
  bool vanish_at_goal = false;
  // Keep playing better-response rounds on the final graphs until no robot
  // moves, so the terminal profile is an equilibrium of those graphs.
  bool settle = true;
  int max_settle_rounds = 1000;
  double eta = 0.0;    // <= 0: 10% of the larger workspace side, at least 1 m
  double gamma = 0.0;  // <= 0: Monte Carlo default
  double speed = 1.0;
  CostMode cost_mode = CostMode::Length;
  std::size_t max_ioptimal_robots = 4;
  std::uint64_t max_joint_tuples = 50'000'000;
};

std::uint64_t effective_seed(const Scenario& s, const PlannerOptions& o);
double default_eta(const Workspace& w);

/// Per-robot random graphs grown in lockstep, one sample per robot per
/// iteration. Growth is independent of the game, so every algorithm run with
/// the same seed sees identical graphs.
class Roadmaps
{
public:
  Roadmaps(const Scenario& s, const PlannerOptions& o);

  void grow(int k);

  std::size_t size() const { return robots_.size(); }
  const Workspace& workspace() const { return workspace_; }
  const RobotSpec& robot(std::size_t i) const { return robots_[i]; }
  const std::vector<RobotSpec>& robots() const { return robots_; }
  const RandomGraph& graph(std::size_t i) const { return graphs_[i]; }
  const std::vector<RandomGraph>& graphs() const { return graphs_; }
  const RadiusSchedule& schedule(std::size_t i) const { return schedules_[i]; }
  bool has_goal_vertex(std::size_t i) const { return goal_seen_[i] != 0; }
  int k() const { return k_; }

private:
  Workspace workspace_;
  std::vector<RobotSpec> robots_;
  std::vector<RandomGraph> graphs_;
  std::vector<Rng> rngs_;
  std::vector<RadiusSchedule> schedules_;
  std::vector<char> goal_seen_;
  ExtendOptions extend_opts_;
  int k_ = 0;
};

/// Everything a path search over one robot's graph needs.
struct SearchContext
{
  const RandomGraph& graph;
  const RobotSpec& robot;
  const Workspace& workspace;
  const PathSet& others;
  const PlannerOptions& options;
};

struct SearchResult
{
  std::optional<PlannedPath> path;
  std::uint64_t leaves = 0;            // goal paths reached
  std::uint64_t collision_checks = 0;  // CollisionFreePath calls
  bool cap_hit = false;
};

PlannedPath make_planned_path(const RandomGraph& g, const VertexPath& ids, const RobotSpec& r,
                              const PlannerOptions& o);

/// Feasible_i restricted to the given candidates: accepted by the reach-avoid
/// automaton and collision-free against `others`; order preserved.
std::vector<PlannedPath> feasible_paths(const std::vector<PlannedPath>& candidates, const PathSet& others,
                                        const RobotSpec& r, const Workspace& w, double margin,
                                        std::uint64_t* calls = nullptr);

/// First feasible goal path, in canonical depth-first order, whose cost is
/// strictly below `bound`. Subtrees that cannot beat the bound (cost lower
/// bound) or already collide (prefix check) are skipped; neither changes
/// which path is found first.
SearchResult first_improvement(const SearchContext& ctx, const CostVector& bound);

/// Cheapest (scalarized) feasible goal path strictly below `bound`.
SearchResult cheapest_improvement(const SearchContext& ctx, const CostVector& bound);

struct Profile
{
  int k = 0;
  std::vector<char> active;
  std::vector<std::optional<PlannedPath>> paths;

  explicit Profile(std::size_t n = 0) : active(n, 0), paths(n) {}
  std::vector<int> active_ids() const;
  /// Paths of all robots other than `skip` (pass -1 for all).
  PathSet path_set(int skip) const;
};

struct IterationRecord
{
  int k = 0;
  std::string phase;   // "grow", "settle" or "final"
  std::string status;  // empty, "cap_exceeded" or "infeasible"
  std::vector<int> active;
  std::vector<std::optional<CostVector>> costs;
  std::uint64_t theta = 0;     // CollisionFreePath calls
  std::uint64_t vartheta = 0;  // broadcast paths
  std::vector<std::uint64_t> path_counts;  // |P_k^[i]|, 0 while inactive
  std::vector<std::uint64_t> q_sizes;      // centralized search only: |Q_k^[i]|
  bool cap_hit = false;
  int changed = 0;
};

struct RunRecord
{
  std::string algorithm;
  std::uint64_t seed = 0;
  PlannerOptions options;
  std::vector<IterationRecord> trace;
  Profile final_profile;
  std::vector<RobotSpec> robots;
  std::vector<RandomGraph> graphs;
  Workspace workspace;
};

struct BetterResponse
{
  std::optional<PlannedPath> path;
  bool changed = false;
  SearchResult search;
};

/// One robot's better response on its graph against `others`.
BetterResponse better_response(const RandomGraph& g, const std::optional<PlannedPath>& current,
                               const PathSet& others, const RobotSpec& r, const Workspace& w,
                               const PlannerOptions& o);

/// Activation, broadcast and ordered better response for one iteration on
/// already-grown graphs. Updates `profile` in place.
IterationRecord inash_iteration(Profile& profile, const Roadmaps& maps, const PlannerOptions& o);

/// Called after every iteration with the profile as it stands then.
using IterationObserver = std::function<void(const Profile&, const IterationRecord&)>;

RunRecord run_inash(const Scenario& s, const PlannerOptions& o, const IterationObserver& observe = {});

struct RobotAudit
{
  int id = 0;
  bool active = false;
  bool has_path = false;
  bool pass = true;
  bool cap_hit = false;
  std::optional<PlannedPath> deviation;
};

struct AuditReport
{
  std::vector<RobotAudit> robots;
  bool all_pass = true;
  bool any_cap_hit = false;
};

/// Exhaustive unilateral-deviation scan over each robot's own final graph.
AuditReport nash_audit(const Profile& p, const std::vector<RandomGraph>& graphs,
                       const std::vector<RobotSpec>& robots, const Workspace& w, const PlannerOptions& o);

/// Profile-level checks shared by tests and the acceptance suite.
bool profile_pairwise_free(const Profile& p, double margin);
bool profile_satisfies_specs(const Profile& p, const std::vector<RobotSpec>& robots, const Workspace& w);

} // namespace inash
