#pragma once

#include <vector>

#include "environment.hpp"

namespace inash {

/// Piecewise-linear, constant-speed trajectory starting at t = 0. After the
/// last vertex the robot stays parked there, unless vanish_at_end is set.
struct TimedPath
{
  int robot_id = 0;
  double radius = 0.0;
  std::vector<Point2> vertices;
  std::vector<double> times;
  bool vanish_at_end = false;

  double duration() const { return times.empty() ? 0.0 : times.back(); }
  Point2 position(double t) const;
};

TimedPath make_timed_path(int robot_id, double radius, std::vector<Point2> vertices, double speed);

/// A robot that never moves (used for inactive robots held at their start).
TimedPath static_path(int robot_id, double radius, Point2 at);

} // namespace inash
