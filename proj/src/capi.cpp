#include "inash/inash.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include "baselines.hpp"
#include "experiment.hpp"
#include "oracle.hpp"
#include "record_io.hpp"
#include "render.hpp"
#include "scenario_io.hpp"
#include "scenarios.hpp"

struct inash_scenario
{
  inash::Scenario value;
};

struct inash_run
{
  inash::RunRecord value;
};

namespace {

thread_local std::string g_last_error;

struct LimitError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

inash_status fail(inash_status s, const std::string& msg)
{
  g_last_error = msg;
  return s;
}

template <class F>
inash_status guarded(F&& f)
{
  try {
    f();
    return INASH_OK;
  } catch (const inash::IoError& e) {
    return fail(INASH_ERR_IO, e.what());
  } catch (const inash::ScenarioError& e) {
    return fail(INASH_ERR_SCENARIO, e.what());
  } catch (const inash::SamplingError& e) {
    return fail(INASH_ERR_SCENARIO, e.what());
  } catch (const inash::GenerationError& e) {
    return fail(INASH_ERR_GENERATION, e.what());
  } catch (const LimitError& e) {
    return fail(INASH_ERR_LIMIT, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(INASH_ERR_PARSE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(INASH_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(INASH_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(INASH_ERR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s)
{
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool cond, const char* what)
{
  if (!cond) throw std::invalid_argument(what);
}

inash::PlannerOptions to_cpp(const inash_planner_options* o)
{
  inash::PlannerOptions p;
  if (!o) return p;
  p.iterations = o->iterations;
  if (o->has_seed) p.seed = o->seed;
  p.margin = o->margin;
  p.path_cap = o->path_cap;
  p.best_response = o->best_response != 0;
  p.goal_by_center = o->goal_by_center != 0;
  p.strict_nearest_only_edges = o->strict_nearest_only_edges != 0;
  p.inactive_as_static = o->inactive_as_static != 0;
  p.vanish_at_goal = o->vanish_at_goal != 0;
  p.settle = o->settle != 0;
  p.max_settle_rounds = o->max_settle_rounds;
  p.eta = o->eta;
  p.gamma = o->gamma;
  p.speed = o->speed;
  p.cost_mode = o->cost_mode == INASH_COST_LENGTH_AND_TIME ? inash::CostMode::LengthAndTime : inash::CostMode::Length;
  p.max_ioptimal_robots = o->max_ioptimal_robots;
  p.max_joint_tuples = o->max_joint_tuples;
  if (p.iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (!(p.speed > 0.0)) throw std::invalid_argument("speed must be positive");
  if (!(p.margin >= 0.0)) throw std::invalid_argument("margin must be >= 0");
  if (p.path_cap < 1) throw std::invalid_argument("path cap must be >= 1");
  return p;
}

inash::RandomScenarioParams to_cpp(const inash_random_params* r)
{
  inash::RandomScenarioParams p;
  if (!r) return p;
  p.bounds = {{r->bounds_min_x, r->bounds_min_y}, {r->bounds_max_x, r->bounds_max_y}};
  p.robots = r->robots;
  p.obstacles = r->obstacles;
  p.robot_radius = r->robot_radius;
  p.goal_radius = r->goal_radius;
  p.min_rect_side = r->min_rect_side;
  p.max_rect_side = r->max_rect_side;
  p.min_circle_radius = r->min_circle_radius;
  p.max_circle_radius = r->max_circle_radius;
  p.circle_fraction = r->circle_fraction;
  p.min_travel_fraction = r->min_travel_fraction;
  p.max_attempts = r->max_attempts;
  return p;
}

inash::json report_json(const inash::EquilibriumReport& rep)
{
  auto opt = [](const std::optional<double>& v) { return v ? inash::json(*v) : inash::json(nullptr); };
  return {{"profiles", rep.profiles},
          {"feasible", rep.feasible},
          {"nash", rep.nash},
          {"social_optima", rep.social_optima},
          {"pos", opt(rep.pos)},
          {"poa", opt(rep.poa)},
          {"so_subset_of_ne", rep.so_subset_of_ne()}};
}

} // namespace

extern "C" {

const char* inash_version(void) { return "1.0.0"; }

const char* inash_status_string(inash_status s)
{
  switch (s) {
  case INASH_OK: return "ok";
  case INASH_ERR_INVALID_ARGUMENT: return "invalid argument";
  case INASH_ERR_PARSE: return "parse error";
  case INASH_ERR_SCENARIO: return "invalid scenario";
  case INASH_ERR_IO: return "i/o error";
  case INASH_ERR_GENERATION: return "generation failed";
  case INASH_ERR_LIMIT: return "limit exceeded";
  case INASH_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* inash_last_error(void) { return g_last_error.c_str(); }

void inash_string_free(char* s) { std::free(s); }

const char* inash_output_dir(void)
{
  const char* d = std::getenv("INASH_OUT_DIR");
  return d && *d ? d : ".";
}

void inash_planner_options_init(inash_planner_options* o)
{
  if (!o) return;
  const inash::PlannerOptions d;
  *o = {};
  o->iterations = d.iterations;
  o->margin = d.margin;
  o->path_cap = d.path_cap;
  o->best_response = d.best_response;
  o->goal_by_center = d.goal_by_center;
  o->strict_nearest_only_edges = d.strict_nearest_only_edges;
  o->inactive_as_static = d.inactive_as_static;
  o->vanish_at_goal = d.vanish_at_goal;
  o->settle = d.settle;
  o->max_settle_rounds = d.max_settle_rounds;
  o->eta = d.eta;
  o->gamma = d.gamma;
  o->speed = d.speed;
  o->cost_mode = INASH_COST_LENGTH;
  o->max_ioptimal_robots = d.max_ioptimal_robots;
  o->max_joint_tuples = d.max_joint_tuples;
}

void inash_random_params_init(inash_random_params* r)
{
  if (!r) return;
  const inash::RandomScenarioParams d;
  *r = {};
  r->bounds_min_x = d.bounds.min.x;
  r->bounds_min_y = d.bounds.min.y;
  r->bounds_max_x = d.bounds.max.x;
  r->bounds_max_y = d.bounds.max.y;
  r->robots = d.robots;
  r->obstacles = d.obstacles;
  r->robot_radius = d.robot_radius;
  r->goal_radius = d.goal_radius;
  r->min_rect_side = d.min_rect_side;
  r->max_rect_side = d.max_rect_side;
  r->min_circle_radius = d.min_circle_radius;
  r->max_circle_radius = d.max_circle_radius;
  r->circle_fraction = d.circle_fraction;
  r->min_travel_fraction = d.min_travel_fraction;
  r->max_attempts = d.max_attempts;
}

inash_status inash_scenario_load(const char* path, inash_scenario** out)
{
  return guarded([&] {
    require(path && out, "null argument");
    *out = new inash_scenario{inash::load_scenario(path)};
  });
}

inash_status inash_scenario_parse(const char* json_text, inash_scenario** out)
{
  return guarded([&] {
    require(json_text && out, "null argument");
    *out = new inash_scenario{inash::parse_scenario(json_text)};
  });
}

inash_status inash_scenario_intersection(inash_scenario** out)
{
  return guarded([&] {
    require(out, "null argument");
    *out = new inash_scenario{inash::intersection_scenario()};
  });
}

inash_status inash_scenario_generate(const inash_random_params* p, uint64_t seed, inash_scenario** out)
{
  return guarded([&] {
    require(out, "null argument");
    *out = new inash_scenario{inash::generate_random_scenario(to_cpp(p), seed)};
  });
}

inash_status inash_scenario_to_json(const inash_scenario* s, char** out)
{
  return guarded([&] {
    require(s && out, "null argument");
    *out = dup_string(inash::scenario_to_json(s->value).dump(2) + "\n");
  });
}

size_t inash_scenario_robot_count(const inash_scenario* s) { return s ? s->value.robots.size() : 0; }

void inash_scenario_free(inash_scenario* s) { delete s; }

inash_status inash_run_create(const inash_scenario* s, const char* algorithm, const inash_planner_options* o,
                              inash_run** out)
{
  return guarded([&] {
    require(s && out, "null argument");
    const auto alg = inash::parse_algorithm(algorithm ? algorithm : "inash");
    *out = new inash_run{inash::run_algorithm(alg, s->value, to_cpp(o))};
  });
}

inash_status inash_run_to_json(const inash_run* r, int include_graphs, char** out)
{
  return guarded([&] {
    require(r && out, "null argument");
    *out = dup_string(inash::run_to_json(r->value, include_graphs != 0).dump() + "\n");
  });
}

inash_status inash_run_audit(const inash_run* r, int* all_pass, int* any_cap_hit, char** report_json)
{
  return guarded([&] {
    require(r != nullptr, "null argument");
    const auto& run = r->value;
    const auto rep = inash::nash_audit(run.final_profile, run.graphs, run.robots, run.workspace, run.options);
    if (all_pass) *all_pass = rep.all_pass ? 1 : 0;
    if (any_cap_hit) *any_cap_hit = rep.any_cap_hit ? 1 : 0;
    if (report_json) {
      inash::json robots = inash::json::array();
      for (const auto& a : rep.robots) {
        inash::json j = {{"id", a.id}, {"active", a.active}, {"has_path", a.has_path}, {"pass", a.pass},
                         {"cap_hit", a.cap_hit}};
        if (a.deviation) {
          j["deviation_cost"] = inash::cost_to_json(a.deviation->cost);
          j["deviation_vertex_ids"] = a.deviation->vertex_ids;
        }
        robots.push_back(std::move(j));
      }
      *report_json = dup_string(
          inash::json{{"all_pass", rep.all_pass}, {"any_cap_hit", rep.any_cap_hit}, {"robots", robots}}.dump(2) +
          "\n");
    }
  });
}

inash_status inash_run_render_svg(const inash_run* r, char** out)
{
  return guarded([&] {
    require(r && out, "null argument");
    const auto& run = r->value;
    std::vector<std::optional<std::vector<inash::Point2>>> paths;
    for (const auto& p : run.final_profile.paths)
      paths.push_back(p ? std::optional(p->path.vertices) : std::nullopt);
    *out = dup_string(inash::render_svg(run.workspace, run.robots, paths));
  });
}

void inash_run_free(inash_run* r) { delete r; }

inash_status inash_render_svg_from_json(const char* json_text, char** out)
{
  return guarded([&] {
    require(json_text && out, "null argument");
    const auto j = inash::json::parse(json_text);
    inash::RunPaths rp;
    if (j.is_object() && j.contains("scenario")) {
      rp = inash::run_paths_from_json(j);
    } else {
      rp.scenario = inash::scenario_from_json(j);
      rp.paths.assign(rp.scenario.robots.size(), std::nullopt);
    }
    *out = dup_string(inash::render_svg(rp.scenario.workspace, rp.scenario.robots, rp.paths));
  });
}

void inash_bench_options_init(inash_bench_options* b)
{
  if (!b) return;
  b->algorithm = "inash";
  b->trials = 20;
  b->base_seed = 1;
}

inash_status inash_bench_run(const inash_scenario* s, const inash_random_params* random_params,
                             const inash_bench_options* b, const inash_planner_options* o, char** csv_out,
                             char** json_out)
{
  return guarded([&] {
    require(b != nullptr, "null bench options");
    inash::ExperimentConfig cfg;
    if (s) {
      cfg.source = inash::ScenarioSource::Fixed;
      cfg.scenario = s->value;
    } else {
      cfg.source = inash::ScenarioSource::Random;
      cfg.random = to_cpp(random_params);
    }
    cfg.algorithm = inash::parse_algorithm(b->algorithm ? b->algorithm : "inash");
    cfg.trials = b->trials;
    cfg.base_seed = b->base_seed;
    cfg.options = to_cpp(o);
    const auto res = inash::run_experiment(cfg);
    if (csv_out) *csv_out = dup_string(inash::metrics_csv(res.table));
    if (json_out) *json_out = dup_string(inash::experiment_to_json(res).dump(2) + "\n");
  });
}

inash_status inash_oracle_scenario(const inash_scenario* s, const inash_planner_options* o, size_t per_robot,
                                   int pareto, char** json_out)
{
  return guarded([&] {
    require(s && json_out, "null argument");
    require(per_robot >= 1, "per_robot must be >= 1");
    const auto opts = to_cpp(o);
    inash::Roadmaps maps(s->value, opts);
    for (int k = 1; k <= opts.iterations; ++k) maps.grow(k);
    const auto game = inash::discrete_game_from_graphs(maps.graphs(), maps.robots(), maps.workspace(), opts, per_robot);
    double product = 1.0;
    for (std::size_t i = 0; i < game.players(); ++i) product *= static_cast<double>(game.strategies(i));
    if (product > 1e6) throw LimitError("strategy product exceeds 10^6 profiles");
    const auto rep = inash::brute_force_equilibria(game, pareto == 0);
    inash::json strategies = inash::json::array();
    for (std::size_t i = 0; i < game.players(); ++i) {
      inash::json row = inash::json::array();
      for (std::size_t k = 0; k < game.strategies(i); ++k)
        row.push_back({{"cost", inash::cost_to_json(game.cost(i, k))},
                       {"vertex_ids", game.paths[i][k].vertex_ids}});
      strategies.push_back(std::move(row));
    }
    inash::json j = report_json(rep);
    j["strategies"] = strategies;
    *json_out = dup_string(j.dump(2) + "\n");
  });
}

inash_status inash_oracle_random_games(uint64_t seed, int count, int pareto, char** json_out)
{
  return guarded([&] {
    require(json_out != nullptr, "null argument");
    require(count >= 1, "count must be >= 1");
    std::mt19937_64 rng(seed);
    inash::RandomGameParams params;
    if (pareto) params.dimension = 2;
    int instances = 0;
    bool all_inclusion = true;
    double max_pos_error = 0.0;
    inash::json failures = inash::json::array();
    while (instances < count) {
      const auto g = inash::random_discrete_game(params, rng);
      const auto rep = inash::brute_force_equilibria(g, pareto == 0);
      if (rep.feasible == 0) continue;
      if (!rep.so_subset_of_ne() || rep.nash.empty()) {
        all_inclusion = false;
        failures.push_back(instances);
      }
      if (!pareto && rep.pos) max_pos_error = std::max(max_pos_error, std::abs(*rep.pos - 1.0));
      ++instances;
    }
    inash::json j = {{"instances", instances}, {"all_inclusion", all_inclusion}, {"failures", failures}};
    if (!pareto) j["max_pos_error"] = max_pos_error;
    *json_out = dup_string(j.dump(2) + "\n");
  });
}

} // extern "C"
