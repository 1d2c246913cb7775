#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "game.hpp"

namespace inash {

/// Grow every graph for K iterations, then let robots pick, in id order, their
/// cheapest path that avoids the paths already chosen by lower ids.
RunRecord prioritized_plan(const Scenario& s, const PlannerOptions& o);

/// Graph growth interleaved with priority repair: when a robot adopts a
/// better path, every lower-priority robot re-picks against its superiors.
RunRecord anytime_prioritized_plan(const Scenario& s, const PlannerOptions& o);

struct JointSolution
{
  bool found = false;
  bool cap_exceeded = false;
  std::uint64_t tuples = 0;           // theta': joint feasibility checks
  std::vector<std::size_t> q_sizes;   // |Q^[i]|
  std::vector<std::optional<PlannedPath>> paths;
  std::optional<CostVector> total;
};

/// Exhaustive product search over the robots' goal paths for the jointly
/// feasible tuple with the least additive cost (strict order, first tuple wins
/// ties). Works on any set of graphs, e.g. the final graphs of another run.
JointSolution optimal_trajectory(const std::vector<RandomGraph>& graphs, const std::vector<RobotSpec>& robots,
                                 const Workspace& w, const PlannerOptions& o);

/// Centralized baseline: optimal_trajectory after every growth step.
/// Throws std::invalid_argument for more than o.max_ioptimal_robots robots.
RunRecord ioptimal_control(const Scenario& s, const PlannerOptions& o);

RunRecord run_algorithm(Algorithm a, const Scenario& s, const PlannerOptions& o);

} // namespace inash
