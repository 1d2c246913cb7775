#pragma once

#include <optional>
#include <vector>

#include "game.hpp"
#include "scenario_io.hpp"

namespace inash {

json options_to_json(const PlannerOptions& o);
/// Reads any subset of the keys written by options_to_json; unknown keys throw.
PlannerOptions options_from_json(const json& j, PlannerOptions base = {});

json cost_to_json(const CostVector& c);
json graph_to_json(const RandomGraph& g);

/// Run record: options, embedded scenario, per-iteration trace and terminal
/// paths; graphs only when asked for.
json run_to_json(const RunRecord& run, bool include_graphs = false);

/// The parts of a run record the renderer needs.
struct RunPaths
{
  Scenario scenario;
  std::vector<std::optional<std::vector<Point2>>> paths;
};

RunPaths run_paths_from_json(const json& j);

} // namespace inash
