#pragma once

#include <cstdint>

#include "environment.hpp"

namespace inash {

struct RandomScenarioParams
{
  Rect bounds{{0.0, 0.0}, {20.0, 20.0}};
  int robots = 8;
  int obstacles = 5;
  double robot_radius = 0.5;
  double goal_radius = 1.0;
  double min_rect_side = 1.0;
  double max_rect_side = 4.0;
  double min_circle_radius = 0.5;
  double max_circle_radius = 2.0;
  double circle_fraction = 0.5;
  // Start-to-goal distance as a fraction of the larger workspace side.
  double min_travel_fraction = 0.4;
  int max_attempts = 2000;
};

class GenerationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Deterministic in (params, seed). Every robot's start and goal are free and
/// connected for that robot alone; starts and goals are spread out so robots
/// parked at a start or a goal never overlap each other.
Scenario generate_random_scenario(const RandomScenarioParams& params, std::uint64_t seed);

/// Four-way crossing on [0,20]^2: four 8.7 m blocks leave a 2.6 m wide
/// horizontal corridor and a matching vertical one; six robots cross the
/// junction.
Scenario intersection_scenario();

} // namespace inash
