#include "trajectory.hpp"

#include <algorithm>
#include <stdexcept>

namespace inash {

Point2 TimedPath::position(double t) const
{
  if (vertices.empty()) throw std::logic_error("empty path");
  if (t <= 0.0) return vertices.front();
  if (t >= duration()) return vertices.back();
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - times.begin()) - 1;
  const double span = times[j + 1] - times[j];
  const double s = span > 0.0 ? (t - times[j]) / span : 0.0;
  return vertices[j] + s * (vertices[j + 1] - vertices[j]);
}

TimedPath make_timed_path(int robot_id, double radius, std::vector<Point2> vertices, double speed)
{
  if (!(speed > 0.0)) throw std::invalid_argument("speed must be positive");
  TimedPath p;
  p.robot_id = robot_id;
  p.radius = radius;
  p.times.reserve(vertices.size());
  double t = 0.0;
  for (std::size_t j = 0; j < vertices.size(); ++j) {
    if (j > 0) t += distance(vertices[j - 1], vertices[j]) / speed;
    p.times.push_back(t);
  }
  p.vertices = std::move(vertices);
  return p;
}

TimedPath static_path(int robot_id, double radius, Point2 at)
{
  TimedPath p;
  p.robot_id = robot_id;
  p.radius = radius;
  p.vertices = {at};
  p.times = {0.0};
  return p;
}

} // namespace inash
