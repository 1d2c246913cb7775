#include "scenarios.hpp"

#include <random>

#include "reference.hpp"

namespace inash {

namespace {

bool place_robots(Scenario& s, const RandomScenarioParams& p, std::mt19937_64& rng)
{
  const Rect& b = p.bounds;
  const double r = p.robot_radius;
  const double side = std::max(b.max.x - b.min.x, b.max.y - b.min.y);
  std::uniform_real_distribution<double> ux(b.min.x, b.max.x);
  std::uniform_real_distribution<double> uy(b.min.y, b.max.y);
  constexpr int kTries = 500;

  std::vector<Point2> inits, goals;
  for (int i = 0; i < p.robots; ++i) {
    bool placed = false;
    for (int t = 0; t < kTries && !placed; ++t) {
      const Point2 init{ux(rng), uy(rng)};
      const Point2 goal{ux(rng), uy(rng)};
      if (!point_free(s.workspace, init, r + 0.1) || !point_free(s.workspace, goal, r)) continue;
      if (distance(init, goal) < p.min_travel_fraction * side) continue;
      bool ok = true;
      for (std::size_t j = 0; j < inits.size() && ok; ++j) {
        ok = distance(init, inits[j]) >= 2.0 * r + 1.0 && distance(goal, goals[j]) >= 2.0 * (p.goal_radius + r) &&
             distance(goal, inits[j]) >= p.goal_radius + 2.0 * r + 0.5 &&
             distance(init, goals[j]) >= p.goal_radius + 2.0 * r + 0.5;
      }
      if (!ok) continue;
      inits.push_back(init);
      goals.push_back(goal);
      placed = true;
    }
    if (!placed) return false;
  }
  for (int i = 0; i < p.robots; ++i) {
    RobotSpec spec;
    spec.id = i + 1;
    spec.radius = r;
    spec.init = inits[i];
    spec.goal = Circle{goals[i], p.goal_radius};
    s.robots.push_back(spec);
  }
  return true;
}

} // namespace

Scenario generate_random_scenario(const RandomScenarioParams& p, std::uint64_t seed)
{
  if (p.robots < 0 || p.obstacles < 0 || !(p.robot_radius > 0.0) || !(p.goal_radius > 0.0) ||
      p.min_rect_side > p.max_rect_side || p.min_circle_radius > p.max_circle_radius || !(p.min_rect_side > 0.0) ||
      !(p.min_circle_radius > 0.0))
    throw std::invalid_argument("invalid random scenario parameters");

  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x5ce7u};
  std::mt19937_64 rng(seq);
  const Rect& b = p.bounds;
  std::uniform_real_distribution<double> ux(b.min.x, b.max.x);
  std::uniform_real_distribution<double> uy(b.min.y, b.max.y);
  std::uniform_real_distribution<double> side(p.min_rect_side, p.max_rect_side);
  std::uniform_real_distribution<double> radius(p.min_circle_radius, p.max_circle_radius);
  std::bernoulli_distribution is_circle(p.circle_fraction);

  for (int attempt = 0; attempt < p.max_attempts; ++attempt) {
    Scenario s;
    s.seed = seed;
    s.workspace.bounds = b;
    for (int i = 0; i < p.obstacles; ++i) {
      const Point2 c{ux(rng), uy(rng)};
      if (is_circle(rng)) {
        s.workspace.obstacles.emplace_back(Circle{c, radius(rng)});
      } else {
        const double w = side(rng);
        const double h = side(rng);
        s.workspace.obstacles.emplace_back(Rect{{c.x - w / 2, c.y - h / 2}, {c.x + w / 2, c.y + h / 2}});
      }
    }
    if (!place_robots(s, p, rng)) continue;
    try {
      validate(s);
    } catch (const ScenarioError&) {
      continue;
    }
    bool connected = true;
    for (const auto& r : s.robots)
      if (!reference_optimum(s.workspace, r)) {
        connected = false;
        break;
      }
    if (connected) return s;
  }
  throw GenerationError("could not generate a valid scenario in " + std::to_string(p.max_attempts) + " attempts");
}

Scenario intersection_scenario()
{
  Scenario s;
  s.seed = 1;
  s.workspace.bounds = {{0.0, 0.0}, {20.0, 20.0}};
  s.workspace.obstacles = {
      Rect{{0.0, 0.0}, {8.7, 8.7}},
      Rect{{11.3, 0.0}, {20.0, 8.7}},
      Rect{{0.0, 11.3}, {8.7, 20.0}},
      Rect{{11.3, 11.3}, {20.0, 20.0}},
  };
  const double g = 0.9;
  auto robot = [&](int id, Point2 init, Point2 goal) {
    RobotSpec r;
    r.id = id;
    r.radius = 0.5;
    r.init = init;
    r.goal = Circle{goal, g};
    return r;
  };
  // Lanes sit 0.8 m either side of each corridor's center line. Every route
  // has the same length, so all six straight lines meet at the center at once.
  s.robots = {
      robot(1, {1.0, 9.2}, {19.0, 10.8}),  robot(2, {19.0, 9.2}, {1.0, 10.8}),
      robot(3, {9.2, 1.0}, {10.8, 19.0}),  robot(4, {9.2, 19.0}, {10.8, 1.0}),
      robot(5, {1.0, 10.8}, {19.0, 9.2}),  robot(6, {10.8, 1.0}, {9.2, 19.0}),
  };
  validate(s);
  return s;
}

} // namespace inash
