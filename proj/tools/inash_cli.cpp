#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "inash/inash.h"

namespace fs = std::filesystem;

namespace {

struct CliError : std::runtime_error
{
  int code;
  CliError(const std::string& msg, int c) : std::runtime_error(msg), code(c) {}
};

void check(inash_status s)
{
  if (s != INASH_OK)
    throw CliError(std::string(inash_status_string(s)) + ": " + inash_last_error(), 10 + static_cast<int>(s));
}

struct OwnedString
{
  char* p = nullptr;
  ~OwnedString() { inash_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

using ScenarioPtr = std::unique_ptr<inash_scenario, decltype(&inash_scenario_free)>;
using RunPtr = std::unique_ptr<inash_run, decltype(&inash_run_free)>;

// Relative paths land under INASH_OUT_DIR when it is set.
fs::path output_path(const std::string& name)
{
  fs::path p(name);
  if (p.is_relative()) p = fs::path(inash_output_dir()) / p;
  return p;
}

void emit(const std::string& out, const std::string& text)
{
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  const fs::path p = output_path(out);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw CliError("cannot write " + p.string(), 2);
  f << text;
  std::cerr << "wrote " << p.string() << '\n';
}

std::string read_file(const std::string& path)
{
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CliError("cannot read " + path, 2);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct ScenarioArgs
{
  std::string file;
  bool intersection = false;
  bool random = false;
  std::uint64_t random_seed = 1;
  inash_random_params params{};

  void add(CLI::App* app)
  {
    inash_random_params_init(&params);
    auto* f = app->add_option("--scenario", file, "Scenario JSON file");
    auto* i = app->add_flag("--intersection", intersection, "Built-in six-robot intersection");
    auto* r = app->add_flag("--random", random, "Random scenario");
    f->excludes(i)->excludes(r);
    i->excludes(r);
    app->add_option("--scenario-seed", random_seed, "Seed for --random");
    app->add_option("--robots", params.robots, "Robots in a random scenario")->check(CLI::Range(0, 64));
    app->add_option("--obstacles", params.obstacles, "Obstacles in a random scenario")->check(CLI::NonNegativeNumber);
  }

  ScenarioPtr load() const
  {
    inash_scenario* s = nullptr;
    if (!file.empty()) check(inash_scenario_load(file.c_str(), &s));
    else if (intersection) check(inash_scenario_intersection(&s));
    else if (random) check(inash_scenario_generate(&params, random_seed, &s));
    else throw CliError("choose one of --scenario, --intersection or --random", 2);
    return {s, &inash_scenario_free};
  }
};

struct PlannerArgs
{
  inash_planner_options o{};
  std::uint64_t seed = 0;
  bool no_settle = false;
  std::string cost_mode = "length";
  std::string goal_by_center = "true";

  void add(CLI::App* app)
  {
    inash_planner_options_init(&o);
    app->add_option("-k,--iterations", o.iterations, "Iteration budget K")->check(CLI::PositiveNumber);
    app->add_option("--seed", seed, "RNG seed (default: scenario seed)");
    app->add_option("--margin", o.margin, "Extra clearance between robots [m]")->check(CLI::NonNegativeNumber);
    app->add_option("--path-cap", o.path_cap, "Goal paths visited per search")->check(CLI::PositiveNumber);
    app->add_flag("--best-response", o.best_response, "Cheapest improvement instead of first improvement");
    app->add_option("--goal-by-center", goal_by_center, "Goal reached by the center (true) or whole disc (false)")
        ->check(CLI::IsMember({"true", "false"}));
    app->add_flag("--strict-nearest-only-edges", o.strict_nearest_only_edges, "Only link the nearest vertex");
    app->add_flag("--inactive-as-static", o.inactive_as_static, "Inactive robots block their start");
    app->add_flag("--vanish-at-goal", o.vanish_at_goal, "Robots disappear after arriving");
    app->add_flag("--no-settle", no_settle, "Stop after K iterations without the settle rounds");
    app->add_option("--eta", o.eta, "Steering distance [m] (default: 10% of the larger side, at least 1)");
    app->add_option("--gamma", o.gamma, "Connection-radius constant (default: from free area)");
    app->add_option("--speed", o.speed, "Robot speed [m/s]")->check(CLI::PositiveNumber);
    app->add_option("--cost", cost_mode, "Cost vector")->check(CLI::IsMember({"length", "length+time"}));
  }

  const inash_planner_options* finish(const CLI::App* app)
  {
    if (app->count("--seed") > 0) {
      o.has_seed = 1;
      o.seed = seed;
    }
    o.settle = no_settle ? 0 : 1;
    o.goal_by_center = goal_by_center == "true" ? 1 : 0;
    o.cost_mode = cost_mode == "length" ? INASH_COST_LENGTH : INASH_COST_LENGTH_AND_TIME;
    return &o;
  }
};

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Game-theoretic multi-robot motion planner"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(inash_version()));

  // plan
  auto* plan = app.add_subcommand("plan", "Run one planner on one scenario");
  ScenarioArgs plan_s;
  PlannerArgs plan_p;
  std::string algorithm = "inash", plan_out, plan_svg, plan_audit_out;
  bool with_graphs = false, audit = false;
  plan_s.add(plan);
  plan_p.add(plan);
  plan->add_option("-a,--algorithm", algorithm, "inash | prioritized | anytime-prioritized | ioptimal")
      ->check(CLI::IsMember({"inash", "prioritized", "anytime-prioritized", "ioptimal"}));
  plan->add_option("-o,--out", plan_out, "Run record JSON (default: stdout)");
  plan->add_option("--svg", plan_svg, "Also render the final paths to this SVG file");
  plan->add_flag("--graphs", with_graphs, "Include the random graphs in the run record");
  plan->add_flag("--audit", audit, "Check the final profile for improving unilateral deviations");
  plan->add_option("--audit-out", plan_audit_out, "Audit report JSON (default: stderr summary only)");

  // bench
  auto* bench = app.add_subcommand("bench", "Multi-trial experiment with a metrics table");
  ScenarioArgs bench_s;
  PlannerArgs bench_p;
  inash_bench_options bopts{};
  inash_bench_options_init(&bopts);
  std::string bench_alg = "inash", bench_csv = "metrics.csv", bench_json = "metrics.json";
  bool random_each = false;
  bench_s.add(bench);
  bench_p.add(bench);
  bench->add_option("-a,--algorithm", bench_alg, "Planner")
      ->check(CLI::IsMember({"inash", "prioritized", "anytime-prioritized", "ioptimal"}));
  bench->add_option("-n,--trials", bopts.trials, "Number of trials")->check(CLI::PositiveNumber);
  bench->add_option("--base-seed", bopts.base_seed, "Trial t uses base seed + t");
  bench->add_flag("--random-per-trial", random_each, "Fresh random scenario per trial");
  bench->add_option("--csv", bench_csv, "Metrics CSV output");
  bench->add_option("--json", bench_json, "Metrics and per-trial JSON output");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exhaustive equilibrium analysis on small games");
  ScenarioArgs oracle_s;
  PlannerArgs oracle_p;
  std::size_t per_robot = 5;
  int random_games = 0;
  std::uint64_t games_seed = 1;
  bool pareto = false;
  std::string oracle_out;
  oracle_s.add(oracle);
  oracle_p.add(oracle);
  oracle->add_option("--per-robot", per_robot, "Cheapest goal paths per robot")->check(CLI::PositiveNumber);
  oracle->add_option("--random-games", random_games, "Analyse this many random finite games instead");
  oracle->add_option("--games-seed", games_seed, "Seed for --random-games");
  oracle->add_flag("--pareto", pareto, "Pareto social optima over per-robot costs");
  oracle->add_option("-o,--out", oracle_out, "Result JSON (default: stdout)");

  // render
  auto* render = app.add_subcommand("render", "Render a run record or scenario to SVG");
  std::string render_in, render_out;
  render->add_option("input", render_in, "Run record or scenario JSON")->required()->check(CLI::ExistingFile);
  render->add_option("-o,--out", render_out, "SVG output (default: stdout)");

  // gen
  auto* gen = app.add_subcommand("gen", "Write a scenario file");
  ScenarioArgs gen_s;
  std::string gen_out;
  gen_s.add(gen);
  gen->add_option("-o,--out", gen_out, "Scenario JSON (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (plan->parsed()) {
      auto s = plan_s.load();
      inash_run* raw = nullptr;
      check(inash_run_create(s.get(), algorithm.c_str(), plan_p.finish(plan), &raw));
      RunPtr run(raw, &inash_run_free);
      OwnedString json;
      check(inash_run_to_json(run.get(), with_graphs ? 1 : 0, &json.p));
      emit(plan_out, json.str());
      if (!plan_svg.empty()) {
        OwnedString svg;
        check(inash_run_render_svg(run.get(), &svg.p));
        emit(plan_svg, svg.str());
      }
      if (audit) {
        int pass = 0, cap = 0;
        OwnedString report;
        check(inash_run_audit(run.get(), &pass, &cap, &report.p));
        std::cerr << "audit: " << (pass ? "no improving deviation" : "improving deviation found")
                  << (cap ? " (path cap hit)" : "") << '\n';
        if (!plan_audit_out.empty()) emit(plan_audit_out, report.str());
        if (!pass) return 1;
      }
    } else if (bench->parsed()) {
      std::unique_ptr<inash_scenario, decltype(&inash_scenario_free)> s(nullptr, &inash_scenario_free);
      if (!random_each) s = bench_s.load();
      bopts.algorithm = bench_alg.c_str();
      OwnedString csv, json;
      check(inash_bench_run(s.get(), &bench_s.params, &bopts, bench_p.finish(bench), &csv.p, &json.p));
      std::cout << csv.str();
      emit(bench_csv, csv.str());
      emit(bench_json, json.str());
    } else if (oracle->parsed()) {
      OwnedString json;
      if (random_games > 0) {
        check(inash_oracle_random_games(games_seed, random_games, pareto ? 1 : 0, &json.p));
      } else {
        auto s = oracle_s.load();
        check(inash_oracle_scenario(s.get(), oracle_p.finish(oracle), per_robot, pareto ? 1 : 0, &json.p));
      }
      emit(oracle_out, json.str());
    } else if (render->parsed()) {
      OwnedString svg;
      check(inash_render_svg_from_json(read_file(render_in).c_str(), &svg.p));
      emit(render_out, svg.str());
    } else if (gen->parsed()) {
      auto s = gen_s.load();
      OwnedString json;
      check(inash_scenario_to_json(s.get(), &json.p));
      emit(gen_out, json.str());
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
