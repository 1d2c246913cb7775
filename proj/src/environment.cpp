#include "environment.hpp"

#include <algorithm>
#include <set>

namespace inash {

namespace {

bool strictly_inside(const Rect& r, Point2 p)
{
  return p.x > r.min.x && p.x < r.max.x && p.y > r.min.y && p.y < r.max.y;
}

// Liang-Barsky clip of [a,b] against the closed rectangle. Returns false when
// the segment misses it; otherwise [t0,t1] is the parameter range inside.
bool clip(const Rect& r, Point2 a, Point2 b, double& t0, double& t1)
{
  t0 = 0.0;
  t1 = 1.0;
  const Point2 d = b - a;
  const double p[4] = {-d.x, d.x, -d.y, d.y};
  const double q[4] = {a.x - r.min.x, r.max.x - a.x, a.y - r.min.y, r.max.y - a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
      continue;
    }
    const double t = q[i] / p[i];
    if (p[i] < 0.0)
      t0 = std::max(t0, t);
    else
      t1 = std::min(t1, t);
    if (t0 > t1) return false;
  }
  return true;
}

double segment_rect_distance(const Rect& r, Point2 a, Point2 b)
{
  double t0, t1;
  if (clip(r, a, b, t0, t1)) return 0.0;
  const Point2 corners[4] = {
      r.min, {r.max.x, r.min.y}, r.max, {r.min.x, r.max.y}};
  double best = std::min(distance_to(r, a), distance_to(r, b));
  for (const auto& c : corners) best = std::min(best, point_segment_distance(c, a, b));
  return best;
}

bool segment_hits_open_interior(const Rect& r, Point2 a, Point2 b)
{
  double t0, t1;
  if (!clip(r, a, b, t0, t1)) return false;
  // A chord of a convex body touches the interior iff its midpoint does.
  const double tm = 0.5 * (t0 + t1);
  return strictly_inside(r, a + tm * (b - a));
}

bool shape_blocks_point(const Shape& s, Point2 p, double inflation)
{
  if (const auto* c = std::get_if<Circle>(&s)) return distance(p, c->center) < c->radius + inflation;
  const auto& r = std::get<Rect>(s);
  if (strictly_inside(r, p)) return true;
  return distance_to(r, p) < inflation;
}

bool shape_blocks_segment(const Shape& s, Point2 a, Point2 b, double inflation)
{
  if (const auto* c = std::get_if<Circle>(&s))
    return point_segment_distance(c->center, a, b) < c->radius + inflation;
  const auto& r = std::get<Rect>(s);
  if (segment_hits_open_interior(r, a, b)) return true;
  return inflation > 0.0 && segment_rect_distance(r, a, b) < inflation;
}

bool inside_shrunk_bounds(const Rect& bounds, Point2 p, double inflation)
{
  return p.x - inflation >= bounds.min.x && p.x + inflation <= bounds.max.x &&
         p.y - inflation >= bounds.min.y && p.y + inflation <= bounds.max.y;
}

Rect bbox(const Shape& s)
{
  if (const auto* c = std::get_if<Circle>(&s))
    return {{c->center.x - c->radius, c->center.y - c->radius},
            {c->center.x + c->radius, c->center.y + c->radius}};
  return std::get<Rect>(s);
}

bool rects_overlap(const Rect& a, const Rect& b)
{
  return a.min.x <= b.max.x && b.min.x <= a.max.x && a.min.y <= b.max.y && b.min.y <= a.max.y;
}

} // namespace

double distance_to(const Rect& r, Point2 p)
{
  const double dx = std::max({r.min.x - p.x, 0.0, p.x - r.max.x});
  const double dy = std::max({r.min.y - p.y, 0.0, p.y - r.max.y});
  return std::hypot(dx, dy);
}

double distance_to(const Circle& c, Point2 p)
{
  return std::max(0.0, distance(p, c.center) - c.radius);
}

double distance_to(const Shape& s, Point2 p)
{
  return std::visit([&](const auto& shape) { return distance_to(shape, p); }, s);
}

double point_segment_distance(Point2 p, Point2 a, Point2 b)
{
  const Point2 d = b - a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
  return distance(p, a + t * d);
}

bool point_free(const Workspace& w, Point2 p, double inflation)
{
  if (!inside_shrunk_bounds(w.bounds, p, inflation)) return false;
  for (const auto& o : w.obstacles)
    if (shape_blocks_point(o, p, inflation)) return false;
  return true;
}

bool segment_free(const Workspace& w, Point2 a, Point2 b, double inflation)
{
  // The shrunk bounds are convex, so endpoint membership covers the segment.
  if (!inside_shrunk_bounds(w.bounds, a, inflation) || !inside_shrunk_bounds(w.bounds, b, inflation))
    return false;
  for (const auto& o : w.obstacles)
    if (shape_blocks_segment(o, a, b, inflation)) return false;
  return true;
}

bool in_goal(const RobotSpec& r, Point2 p)
{
  const double shrink = r.goal_by_center ? 0.0 : r.radius;
  if (const auto* c = std::get_if<Circle>(&r.goal)) return distance(p, c->center) < c->radius - shrink;
  const auto& g = std::get<Rect>(r.goal);
  return p.x > g.min.x + shrink && p.x < g.max.x - shrink && p.y > g.min.y + shrink &&
         p.y < g.max.y - shrink;
}

double area(const Rect& r) { return (r.max.x - r.min.x) * (r.max.y - r.min.y); }

const RobotSpec& robot_by_id(const Scenario& s, int id)
{
  for (const auto& r : s.robots)
    if (r.id == id) return r;
  throw ScenarioError("no robot with id " + std::to_string(id));
}

void validate(const Scenario& s)
{
  const Rect& b = s.workspace.bounds;
  if (!is_finite(b.min) || !is_finite(b.max) || !(b.min.x < b.max.x) || !(b.min.y < b.max.y))
    throw ScenarioError("bounds must be finite with min < max");

  for (std::size_t i = 0; i < s.workspace.obstacles.size(); ++i) {
    const auto& o = s.workspace.obstacles[i];
    const std::string tag = "obstacle " + std::to_string(i);
    if (const auto* c = std::get_if<Circle>(&o)) {
      if (!is_finite(c->center) || !std::isfinite(c->radius) || c->radius <= 0.0)
        throw ScenarioError(tag + ": circle needs finite center and radius > 0");
    } else {
      const auto& r = std::get<Rect>(o);
      if (!is_finite(r.min) || !is_finite(r.max) || r.min.x > r.max.x || r.min.y > r.max.y)
        throw ScenarioError(tag + ": rectangle needs min <= max");
    }
    if (!rects_overlap(bbox(o), b)) throw ScenarioError(tag + " does not intersect the bounds");
  }

  std::set<int> ids;
  for (const auto& r : s.robots) {
    const std::string tag = "robot " + std::to_string(r.id);
    if (!ids.insert(r.id).second) throw ScenarioError(tag + ": duplicate id");
    if (!std::isfinite(r.radius) || r.radius <= 0.0) throw ScenarioError(tag + ": radius must be > 0");
    if (!is_finite(r.init)) throw ScenarioError(tag + ": init must be finite");
    if (!point_free(s.workspace, r.init, r.radius)) throw ScenarioError(tag + ": init is not free");
    if (const auto* c = std::get_if<Circle>(&r.goal)) {
      if (!is_finite(c->center) || !(c->radius > 0.0)) throw ScenarioError(tag + ": bad goal circle");
    } else {
      const auto& g = std::get<Rect>(r.goal);
      if (!is_finite(g.min) || !is_finite(g.max) || !(g.min.x < g.max.x) || !(g.min.y < g.max.y))
        throw ScenarioError(tag + ": bad goal rectangle");
    }
    // Probe the goal's bounding box on a lattice for a free goal point.
    const Rect gb = bbox(r.goal);
    bool reachable = false;
    constexpr int kProbe = 64;
    for (int ix = 0; ix <= kProbe && !reachable; ++ix)
      for (int iy = 0; iy <= kProbe && !reachable; ++iy) {
        const Point2 p{gb.min.x + (gb.max.x - gb.min.x) * (ix + 0.5) / (kProbe + 1),
                       gb.min.y + (gb.max.y - gb.min.y) * (iy + 0.5) / (kProbe + 1)};
        reachable = in_goal(r, p) && point_free(s.workspace, p, r.radius);
      }
    if (!reachable) throw ScenarioError(tag + ": goal region has no free point");
  }
  for (std::size_t i = 1; i <= s.robots.size(); ++i)
    if (!ids.count(static_cast<int>(i))) throw ScenarioError("robot ids must be contiguous 1..N");

  if (s.robots.empty()) {
    bool any = false;
    constexpr int kProbe = 64;
    for (int ix = 0; ix <= kProbe && !any; ++ix)
      for (int iy = 0; iy <= kProbe && !any; ++iy)
        any = point_free(s.workspace,
                         {b.min.x + (b.max.x - b.min.x) * ix / kProbe,
                          b.min.y + (b.max.y - b.min.y) * iy / kProbe},
                         0.0);
    if (!any) throw ScenarioError("free space is empty");
  }
}

} // namespace inash
