#include <doctest.h>

#include <random>

#include "game.hpp"
#include "oracles.hpp"
#include "record_io.hpp"

using namespace inash;

namespace {

CostVector cv(std::vector<double> v) { return {std::move(v)}; }

RobotSpec robot(int id, Point2 init, Shape goal, double radius = 0.5)
{
  RobotSpec r;
  r.id = id;
  r.radius = radius;
  r.init = init;
  r.goal = goal;
  return r;
}

Scenario corridor()
{
  Scenario s;
  s.workspace = {{{0, 0}, {10, 10}}, {Rect{{0, 0}, {10, 3}}, Rect{{0, 7}, {10, 10}}}};
  s.robots = {robot(1, {1, 5}, Circle{{9, 5}, 0.8}), robot(2, {9, 5}, Circle{{1, 5}, 0.8})};
  s.seed = 11;
  return s;
}

Scenario single()
{
  Scenario s;
  s.workspace = {{{0, 0}, {10, 10}}, {}};
  s.robots = {robot(1, {1, 5}, Circle{{9, 5}, 1.0})};
  s.seed = 5;
  return s;
}

} // namespace

TEST_CASE("partial order examples")
{
  CHECK(pleq(cv({1, 2}), cv({1, 3})));
  CHECK(plt(cv({1, 2}), cv({1, 3})));
  CHECK_FALSE(pleq(cv({1, 3}), cv({2, 2})));
  CHECK_FALSE(plt(cv({1, 3}), cv({2, 2})));
  CHECK_FALSE(plt(cv({2, 2}), cv({1, 3})));
  CHECK(pleq(cv({4}), cv({4})));
  CHECK_FALSE(plt(cv({4}), cv({4})));
  CHECK(plt(cv({4}), CostVector::top(1)));
  CHECK_FALSE(plt(CostVector::top(1), CostVector::top(1)));
  CHECK_THROWS_AS(pleq(cv({1}), cv({1, 2})), std::invalid_argument);
}

TEST_CASE("path cost examples")
{
  const TimedPath p = make_timed_path(1, 0.5, {{0, 0}, {1, 0}, {1, 1}}, 1.0);
  CHECK(path_cost(p, CostMode::Length) == cv({2.0}));
  CHECK(path_cost(static_path(1, 0.5, {3, 3}), CostMode::Length) == cv({0.0}));
  const TimedPath slow = make_timed_path(1, 0.5, {{0, 0}, {1, 0}, {1, 1}}, 0.5);
  const CostVector two = path_cost(slow, CostMode::LengthAndTime);
  CHECK(two[0] == doctest::Approx(2.0));
  CHECK(two[1] == doctest::Approx(4.0));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int t = 0; t < 100; ++t) {
    std::vector<Point2> pts;
    for (int i = 0; i < 10; ++i) pts.push_back({u(rng), u(rng)});
    double sum = 0.0;
    for (int i = 1; i < 10; ++i) sum += std::sqrt((pts[i].x - pts[i - 1].x) * (pts[i].x - pts[i - 1].x) +
                                                  (pts[i].y - pts[i - 1].y) * (pts[i].y - pts[i - 1].y));
    CHECK(std::abs(path_cost(make_timed_path(1, 0.5, pts, 1.0), CostMode::Length)[0] - sum) < 1e-9);
  }
}

TEST_CASE("collision examples")
{
  const TimedPath a = make_timed_path(1, 0.5, {{0, 0}, {10, 0}}, 1.0);
  const TimedPath b = make_timed_path(2, 0.5, {{0, 3}, {10, 3}}, 1.0);
  CHECK(collision_free_pair(a, b, 0.0));
  CHECK_FALSE(collision_free_pair(a, b, 2.5));

  const TimedPath swap = make_timed_path(2, 0.5, {{10, 0}, {0, 0}}, 1.0);
  CHECK_FALSE(collision_free_pair(a, swap, 0.0));

  // A passes the junction at t = 5, B at t = 10.
  const TimedPath cross_a = make_timed_path(1, 0.5, {{-5, 0}, {5, 0}}, 1.0);
  const TimedPath cross_b = make_timed_path(2, 0.5, {{0, -10}, {0, 10}}, 1.0);
  CHECK(collision_free_pair(cross_a, cross_b, 0.0));
  CHECK(testing::sampled_min_distance(cross_a, cross_b) == doctest::Approx(std::sqrt(12.5)).epsilon(1e-6));
  const TimedPath same_time = make_timed_path(2, 0.5, {{0, -5}, {0, 5}}, 1.0);
  CHECK_FALSE(collision_free_pair(cross_a, same_time, 0.0));

  // Parked at the end: B waits on A's route after arriving.
  const TimedPath parked = make_timed_path(2, 0.5, {{8, 3}, {8, 0.5}}, 1.0);
  CHECK_FALSE(collision_free_pair(a, parked, 0.0));
  TimedPath vanishing = parked;
  vanishing.vanish_at_end = true;
  CHECK(collision_free_pair(a, vanishing, 0.0));

  std::uint64_t calls = 0;
  CHECK(collision_free_path(a, {&b}, 0.0, &calls));
  CHECK_FALSE(collision_free_path(a, {&b, &swap}, 0.0, &calls));
  CHECK(collision_free_path(a, {}, 0.0, &calls));
  CHECK(calls == 3);
}

TEST_CASE("exact collision test agrees with dense sampling")
{
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> rad(0.3, 0.7);
  int colliding = 0, disagreements = 0;
  for (int t = 0; t < 1000; ++t) {
    const TimedPath a = make_timed_path(1, rad(rng), testing::random_polyline(rng, 0, 6, 4), 1.0);
    const TimedPath b = make_timed_path(2, rad(rng), testing::random_polyline(rng, 0, 6, 4), 1.0);
    const double thr = a.radius + b.radius;
    const double sampled = testing::sampled_min_distance(a, b);
    const bool exact = collision_free_pair(a, b, 0.0);
    CHECK(exact == collision_free_pair(b, a, 0.0));
    colliding += !exact;
    if (exact != (sampled >= thr) && std::abs(sampled - thr) > 1e-6) ++disagreements;
  }
  CHECK(disagreements == 0);
  CHECK(colliding > 100);
  CHECK(colliding < 900);
}

TEST_CASE("interval_clear matches the whole-path check")
{
  const TimedPath other = make_timed_path(2, 0.5, {{0, -10}, {0, 10}}, 1.0);
  // Reaching the junction at t = 5 while the other passes at t = 10.
  CHECK(interval_clear({-5, 0}, {0, 0}, 0, 5, 0.5, other, 0.0));
  CHECK_FALSE(interval_clear({-5, 0}, {0, 0}, 5, 10, 0.5, other, 0.0));
}

TEST_CASE("feasible_paths examples")
{
  const Workspace w{{{0, 0}, {10, 10}}, {}};
  const RobotSpec r = robot(1, {1, 5}, Circle{{9, 5}, 1.0});
  RandomGraph g({1, 5});
  g.add_vertex({5, 5});
  g.add_vertex({5, 8});
  g.add_vertex({9, 5});
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 3);
  g.add_edge(2, 3);
  const PlannerOptions o;
  const std::vector<PlannedPath> cands{make_planned_path(g, {0, 1, 3}, r, o), make_planned_path(g, {0, 2, 3}, r, o)};

  std::uint64_t calls = 0;
  const auto all = feasible_paths(cands, {}, r, w, 0.0, &calls);
  REQUIRE(all.size() == 2);
  CHECK(all[0].vertex_ids == cands[0].vertex_ids);
  CHECK(all[1].vertex_ids == cands[1].vertex_ids);
  CHECK(calls == 2);

  // Another robot sits in the straight corridor at the time it is used.
  const TimedPath blocker = make_timed_path(2, 0.5, {{5, 2}, {5, 5}}, 1.0);
  const auto some = feasible_paths(cands, {&blocker}, r, w, 0.0);
  REQUIRE(some.size() == 1);
  CHECK(some[0].vertex_ids == VertexPath{0, 2, 3});

  CHECK(feasible_paths({}, {&blocker}, r, w, 0.0).empty());
}

namespace {

// Three direct goal vertices at lengths 5.5, 4.2 and 3.0 in index order.
struct FanFixture
{
  Workspace w{{{-1, -1}, {10, 10}}, {}};
  RobotSpec r = robot(1, {0, 0}, Circle{{3, 3}, 2.6}, 0.1);
  RandomGraph g{{0, 0}};
  PlannerOptions o;

  FanFixture()
  {
    const double s = std::sqrt(0.5);
    for (double len : {5.5, 4.2, 3.0}) g.add_edge(0, g.add_vertex({len * s, len * s}));
  }

  PlannedPath current(double cost)
  {
    PlannedPath p = make_planned_path(g, {0, 1}, r, o);
    p.cost = cv({cost});
    return p;
  }
};

} // namespace

TEST_CASE("better_response takes the first strict improvement")
{
  FanFixture f;
  const auto first = better_response(f.g, f.current(5.0), {}, f.r, f.w, f.o);
  REQUIRE(first.path);
  CHECK(first.changed);
  CHECK(first.path->cost[0] == doctest::Approx(4.2));

  const auto from_top = better_response(f.g, std::nullopt, {}, f.r, f.w, f.o);
  REQUIRE(from_top.path);
  CHECK(from_top.path->cost[0] == doctest::Approx(5.5));

  PlannerOptions best = f.o;
  best.best_response = true;
  const auto cheapest = better_response(f.g, f.current(5.0), {}, f.r, f.w, best);
  REQUIRE(cheapest.path);
  CHECK(cheapest.path->cost[0] == doctest::Approx(3.0));

  const auto none = better_response(f.g, f.current(2.0), {}, f.r, f.w, f.o);
  CHECK_FALSE(none.changed);
  REQUIRE(none.path);
  CHECK(none.path->cost[0] == 2.0);
}

TEST_CASE("better_response keeps ties")
{
  const Workspace w{{{-1, -1}, {10, 10}}, {}};
  const RobotSpec r = robot(1, {0, 0}, Circle{{3, 0}, 0.5}, 0.1);
  RandomGraph g({0, 0});
  g.add_edge(0, g.add_vertex({3, 0}));
  g.add_edge(0, g.add_vertex({3, 0}));
  const PlannerOptions o;
  auto cur = make_planned_path(g, {0, 1}, r, o);
  const auto br = better_response(g, cur, {}, r, w, o);
  CHECK_FALSE(br.changed);
  CHECK(br.path->vertex_ids == VertexPath{0, 1});

  const auto only = better_response(g, std::nullopt, {}, r, w, o);
  REQUIRE(only.path);
  CHECK(only.path->vertex_ids == VertexPath{0, 1});
}

TEST_CASE("single robot improves toward the straight line")
{
  // Edges only run from older to newer vertices, so shortcuts need many samples.
  PlannerOptions o;
  o.iterations = 2000;
  const RunRecord run = run_inash(single(), o);
  std::optional<double> prev;
  for (const auto& rec : run.trace) {
    if (!rec.costs[0]) continue;
    if (prev) CHECK(rec.costs[0]->components[0] <= *prev);
    prev = rec.costs[0]->components[0];
  }
  REQUIRE(run.final_profile.paths[0]);
  const double len = run.final_profile.paths[0]->cost[0];
  CHECK(len > 7.0);
  CHECK(len < 7.0 * 1.08);
}

TEST_CASE("two robots in a corridor stay feasible every iteration")
{
  const Scenario s = corridor();
  PlannerOptions o;
  o.iterations = 300;
  Roadmaps maps(s, o);
  Profile profile(maps.size());
  std::vector<std::optional<double>> prev(2);
  std::vector<char> prev_active(2, 0);
  bool both = false;
  for (int k = 1; k <= o.iterations; ++k) {
    maps.grow(k);
    const auto rec = inash_iteration(profile, maps, o);
    CHECK(rec.vartheta == 2 * rec.active.size());
    std::uint64_t paths = 0;
    for (auto c : rec.path_counts) paths += c;
    if (!rec.cap_hit) CHECK(rec.theta <= paths);
    CHECK(profile_pairwise_free(profile, o.margin));
    CHECK(profile_satisfies_specs(profile, maps.robots(), maps.workspace()));
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(profile.active[i] >= prev_active[i]);
      prev_active[i] = profile.active[i];
      if (!rec.costs[i]) continue;
      if (prev[i]) CHECK(rec.costs[i]->components[0] <= *prev[i]);
      prev[i] = rec.costs[i]->components[0];
    }
    both = both || (profile.paths[0] && profile.paths[1]);
  }
  CHECK(both);
}

TEST_CASE("runs are deterministic and settle into graph equilibria")
{
  const Scenario s = corridor();
  PlannerOptions o;
  o.iterations = 200;
  const RunRecord a = run_inash(s, o);
  const RunRecord b = run_inash(s, o);
  CHECK(run_to_json(a).dump() == run_to_json(b).dump());
  CHECK(a.trace.back().changed == 0);

  const AuditReport audit = nash_audit(a.final_profile, a.graphs, a.robots, a.workspace, o);
  if (!a.trace.back().cap_hit) CHECK(audit.all_pass);

  PlannerOptions other = o;
  other.seed = 12;
  CHECK(run_to_json(run_inash(s, other)).dump() != run_to_json(a).dump());
}

TEST_CASE("audit finds an obvious shortcut")
{
  const Workspace w{{{0, 0}, {10, 10}}, {}};
  const RobotSpec r = robot(1, {0.5, 0.5}, Circle{{4, 0.5}, 0.5}, 0.2);
  RandomGraph g({0.5, 0.5});
  g.add_vertex({2, 4});
  g.add_vertex({4, 0.5});
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  const PlannerOptions o;
  Profile p(1);
  p.active[0] = 1;
  p.paths[0] = make_planned_path(g, {0, 1, 2}, r, o);
  const AuditReport bad = nash_audit(p, {g}, {r}, w, o);
  CHECK_FALSE(bad.all_pass);
  REQUIRE(bad.robots[0].deviation);
  CHECK(bad.robots[0].deviation->vertex_ids == VertexPath{0, 2});

  p.paths[0] = make_planned_path(g, {0, 2}, r, o);
  CHECK(nash_audit(p, {g}, {r}, w, o).all_pass);
}

TEST_CASE("unreachable goals never activate")
{
  Scenario s;
  s.workspace = {{{0, 0}, {10, 10}}, {Rect{{4, 0}, {5, 10}}}};
  s.robots = {robot(1, {1, 5}, Circle{{8, 5}, 1.0})};
  PlannerOptions o;
  o.iterations = 100;
  const RunRecord run = run_inash(s, o);
  for (const auto& rec : run.trace) {
    CHECK(rec.active.empty());
    CHECK(rec.vartheta == 0);
    CHECK(rec.theta == 0);
  }
  CHECK_FALSE(run.final_profile.paths[0]);
  CHECK(nash_audit(run.final_profile, run.graphs, run.robots, run.workspace, o).all_pass);
  CHECK(nash_audit(Profile(0), {}, {}, s.workspace, o).all_pass);
}

TEST_CASE("inactive robots can be treated as static obstacles")
{
  // Robot 2's goal is walled off, so it stays inactive at its start, which
  // sits on robot 1's straight route.
  Scenario s;
  s.workspace = {{{0, 0}, {10, 10}}, {Rect{{0, 8}, {10, 8.4}}}};
  s.robots = {robot(1, {1, 5}, Circle{{9, 5}, 1.0}), robot(2, {5, 5}, Circle{{5, 9.2}, 0.5})};
  PlannerOptions o;
  o.iterations = 900;
  o.inactive_as_static = true;
  const RunRecord run = run_inash(s, o);
  CHECK_FALSE(run.final_profile.active[1]);
  REQUIRE(run.final_profile.paths[0]);
  const TimedPath still = static_path(2, 0.5, {5, 5});
  CHECK(collision_free_pair(run.final_profile.paths[0]->path, still, 0.0));

  o.inactive_as_static = false;
  const RunRecord ignored = run_inash(s, o);
  REQUIRE(ignored.final_profile.paths[0]);
  CHECK(ignored.final_profile.paths[0]->cost[0] <= run.final_profile.paths[0]->cost[0]);
}

TEST_CASE("algorithm names")
{
  for (auto a : {Algorithm::INash, Algorithm::Prioritized, Algorithm::AnytimePrioritized, Algorithm::IOptimal})
    CHECK(parse_algorithm(algorithm_name(a)) == a);
  CHECK_THROWS(parse_algorithm("greedy"));
}
