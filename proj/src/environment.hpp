#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace inash {

struct Point2
{
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point2 a, Point2 b) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Axis-aligned rectangle, min <= max componentwise.
struct Rect
{
  Point2 min;
  Point2 max;
};

struct Circle
{
  Point2 center;
  double radius = 0.0;
};

/// Obstacles and goal regions share the same two shape kinds.
using Shape = std::variant<Rect, Circle>;

struct Workspace
{
  Rect bounds;
  std::vector<Shape> obstacles;
};

struct RobotSpec
{
  int id = 1;
  double radius = 0.5;
  Point2 init;
  Shape goal = Circle{};
  // When false the whole disc must lie inside the goal region.
  bool goal_by_center = true;
};

struct Scenario
{
  Workspace workspace;
  std::vector<RobotSpec> robots;
  std::uint64_t seed = 0;
};

class ScenarioError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Euclidean distance from p to the closed shape (0 inside).
double distance_to(const Rect& r, Point2 p);
double distance_to(const Circle& c, Point2 p);
double distance_to(const Shape& s, Point2 p);

double point_segment_distance(Point2 p, Point2 a, Point2 b);

/// True iff the closed disc of radius `inflation` around p lies inside the
/// bounds and misses every obstacle interior.
bool point_free(const Workspace& w, Point2 p, double inflation);

/// Exact swept-disc test for the segment [a,b].
bool segment_free(const Workspace& w, Point2 a, Point2 b, double inflation);

/// Open-interior goal membership (respects RobotSpec::goal_by_center).
bool in_goal(const RobotSpec& r, Point2 p);

double area(const Rect& r);

/// Throws ScenarioError describing the first violated invariant.
void validate(const Scenario& s);

const RobotSpec& robot_by_id(const Scenario& s, int id);

} // namespace inash
