#include "record_io.hpp"

#include <set>
#include <stdexcept>

namespace inash {

namespace {

const char* cost_mode_name(CostMode m) { return m == CostMode::Length ? "length" : "length+time"; }

CostMode parse_cost_mode(const std::string& s)
{
  if (s == "length") return CostMode::Length;
  if (s == "length+time") return CostMode::LengthAndTime;
  throw std::invalid_argument("unknown cost mode '" + s + "'");
}

} // namespace

json options_to_json(const PlannerOptions& o)
{
  json j = {{"iterations", o.iterations},
            {"margin", o.margin},
            {"path_cap", o.path_cap},
            {"best_response", o.best_response},
            {"goal_by_center", o.goal_by_center},
            {"strict_nearest_only_edges", o.strict_nearest_only_edges},
            {"inactive_as_static", o.inactive_as_static},
            {"vanish_at_goal", o.vanish_at_goal},
            {"settle", o.settle},
            {"max_settle_rounds", o.max_settle_rounds},
            {"eta", o.eta},
            {"gamma", o.gamma},
            {"speed", o.speed},
            {"cost_mode", cost_mode_name(o.cost_mode)},
            {"max_ioptimal_robots", o.max_ioptimal_robots},
            {"max_joint_tuples", o.max_joint_tuples}};
  j["seed"] = o.seed ? json(*o.seed) : json(nullptr);
  return j;
}

PlannerOptions options_from_json(const json& j, PlannerOptions o)
{
  if (!j.is_object()) throw std::invalid_argument("options must be an object");
  for (const auto& [key, v] : j.items()) {
    if (key == "iterations") o.iterations = v.get<int>();
    else if (key == "seed") o.seed = v.is_null() ? std::nullopt : std::optional<std::uint64_t>(v.get<std::uint64_t>());
    else if (key == "margin") o.margin = v.get<double>();
    else if (key == "path_cap") o.path_cap = v.get<std::size_t>();
    else if (key == "best_response") o.best_response = v.get<bool>();
    else if (key == "goal_by_center") o.goal_by_center = v.get<bool>();
    else if (key == "strict_nearest_only_edges") o.strict_nearest_only_edges = v.get<bool>();
    else if (key == "inactive_as_static") o.inactive_as_static = v.get<bool>();
    else if (key == "vanish_at_goal") o.vanish_at_goal = v.get<bool>();
    else if (key == "settle") o.settle = v.get<bool>();
    else if (key == "max_settle_rounds") o.max_settle_rounds = v.get<int>();
    else if (key == "eta") o.eta = v.get<double>();
    else if (key == "gamma") o.gamma = v.get<double>();
    else if (key == "speed") o.speed = v.get<double>();
    else if (key == "cost_mode") o.cost_mode = parse_cost_mode(v.get<std::string>());
    else if (key == "max_ioptimal_robots") o.max_ioptimal_robots = v.get<std::size_t>();
    else if (key == "max_joint_tuples") o.max_joint_tuples = v.get<std::uint64_t>();
    else throw std::invalid_argument("unknown option '" + key + "'");
  }
  return o;
}

json cost_to_json(const CostVector& c) { return c.components; }

json graph_to_json(const RandomGraph& g)
{
  json vs = json::array();
  for (Point2 p : g.vertices()) vs.push_back(point_to_json(p));
  json es = json::array();
  for (std::size_t v = 0; v < g.size(); ++v)
    for (const auto& e : g.out_edges(v)) es.push_back({v, e.to, e.length});
  return {{"vertices", vs}, {"edges", es}, {"iteration", g.iteration}};
}

json run_to_json(const RunRecord& run, bool include_graphs)
{
  Scenario s;
  s.workspace = run.workspace;
  s.robots = run.robots;
  s.seed = run.seed;

  json trace = json::array();
  for (const auto& r : run.trace) {
    json costs = json::array();
    for (const auto& c : r.costs) costs.push_back(c ? cost_to_json(*c) : json(nullptr));
    json it = {{"k", r.k},
               {"phase", r.phase},
               {"active", r.active},
               {"costs", costs},
               {"theta", r.theta},
               {"vartheta", r.vartheta},
               {"path_counts", r.path_counts},
               {"cap_hit", r.cap_hit},
               {"changed", r.changed}};
    if (!r.status.empty()) it["status"] = r.status;
    if (!r.q_sizes.empty()) it["q_sizes"] = r.q_sizes;
    trace.push_back(std::move(it));
  }

  json paths = json::array();
  for (std::size_t i = 0; i < run.final_profile.paths.size(); ++i) {
    const auto& p = run.final_profile.paths[i];
    if (!p) {
      paths.push_back(nullptr);
      continue;
    }
    json vs = json::array();
    for (Point2 v : p->path.vertices) vs.push_back(point_to_json(v));
    paths.push_back({{"id", run.robots[i].id},
                     {"vertex_ids", p->vertex_ids},
                     {"vertices", vs},
                     {"times", p->path.times},
                     {"cost", cost_to_json(p->cost)}});
  }

  json j = {{"algorithm", run.algorithm},
            {"seed", run.seed},
            {"options", options_to_json(run.options)},
            {"scenario", scenario_to_json(s)},
            {"trace", trace},
            {"paths", paths}};
  if (include_graphs) {
    json gs = json::array();
    for (std::size_t i = 0; i < run.graphs.size(); ++i) {
      json g = graph_to_json(run.graphs[i]);
      g["id"] = run.robots[i].id;
      gs.push_back(std::move(g));
    }
    j["graphs"] = gs;
  }
  return j;
}

RunPaths run_paths_from_json(const json& j)
{
  if (!j.is_object() || !j.contains("scenario")) throw std::invalid_argument("run record needs a 'scenario' field");
  RunPaths out;
  out.scenario = scenario_from_json(j.at("scenario"));
  out.paths.assign(out.scenario.robots.size(), std::nullopt);
  if (!j.contains("paths")) return out;
  const auto& ps = j.at("paths");
  if (!ps.is_array() || ps.size() != out.scenario.robots.size())
    throw std::invalid_argument("'paths' must hold one entry per robot");
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps[i].is_null()) continue;
    std::vector<Point2> pts;
    for (const auto& v : ps[i].at("vertices")) pts.push_back(point_from_json(v, "paths.vertices"));
    out.paths[i] = std::move(pts);
  }
  return out;
}

} // namespace inash
