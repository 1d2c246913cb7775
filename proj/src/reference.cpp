#include "reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include "game.hpp"
#include "rrg.hpp"

namespace inash {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Vertices of the polygon circumscribing the arc of radius rho around c
// between angles a0 and a0 + span (span a multiple of 2 pi / m).
void arc_vertices(Point2 c, double rho, double a0, double span, int m, std::vector<Point2>& out)
{
  const double step = 2.0 * std::numbers::pi / m;
  const int pieces = static_cast<int>(std::lround(span / step));
  const double grow = 1.0 + 1e-9;
  const double outer = rho / std::cos(step / 2.0) * grow + 1e-12;
  auto at = [&](double a, double radius) { return c + radius * Point2{std::cos(a), std::sin(a)}; };
  if (pieces >= m) {
    for (int k = 0; k < m; ++k) out.push_back(at(a0 + (k + 0.5) * step, outer));
    return;
  }
  out.push_back(at(a0, rho * grow + 1e-12));
  for (int k = 0; k < pieces; ++k) out.push_back(at(a0 + (k + 0.5) * step, outer));
  out.push_back(at(a0 + span, rho * grow + 1e-12));
}

Point2 nearest_goal_point(const Shape& goal, double shrink, Point2 p)
{
  if (const auto* c = std::get_if<Circle>(&goal)) {
    const double rad = c->radius - shrink;
    const double inner = rad - 1e-7 * std::max(1.0, rad);
    const Point2 d = p - c->center;
    const double len = norm(d);
    if (len < inner) return p;
    if (len == 0.0) return c->center;
    return c->center + (inner / len) * d;
  }
  const auto& g = std::get<Rect>(goal);
  const double e = 1e-7 * std::max(1.0, std::max(g.max.x - g.min.x, g.max.y - g.min.y));
  return {std::clamp(p.x, g.min.x + shrink + e, g.max.x - shrink - e),
          std::clamp(p.y, g.min.y + shrink + e, g.max.y - shrink - e)};
}

std::vector<Point2> goal_boundary_samples(const Shape& goal, double shrink)
{
  std::vector<Point2> out;
  constexpr int kSamples = 64;
  if (const auto* c = std::get_if<Circle>(&goal)) {
    const double rad = c->radius - shrink;
    const double inner = rad - 1e-7 * std::max(1.0, rad);
    if (inner <= 0.0) return {c->center};
    for (int k = 0; k < kSamples; ++k) {
      const double a = 2.0 * std::numbers::pi * k / kSamples;
      out.push_back(c->center + inner * Point2{std::cos(a), std::sin(a)});
    }
    return out;
  }
  const auto& g = std::get<Rect>(goal);
  const double e = 1e-7 * std::max(1.0, std::max(g.max.x - g.min.x, g.max.y - g.min.y));
  const Point2 lo{g.min.x + shrink + e, g.min.y + shrink + e};
  const Point2 hi{g.max.x - shrink - e, g.max.y - shrink - e};
  if (lo.x > hi.x || lo.y > hi.y) return {};
  for (int k = 0; k < kSamples / 4; ++k) {
    const double s = static_cast<double>(k) / (kSamples / 4);
    out.push_back({lo.x + s * (hi.x - lo.x), lo.y});
    out.push_back({hi.x, lo.y + s * (hi.y - lo.y)});
    out.push_back({hi.x - s * (hi.x - lo.x), hi.y});
    out.push_back({lo.x, hi.y - s * (hi.y - lo.y)});
  }
  return out;
}

} // namespace

std::optional<double> reference_optimum(const Workspace& w, const RobotSpec& r, int arc_segments)
{
  if (!point_free(w, r.init, r.radius)) return std::nullopt;
  if (in_goal(r, r.init)) return 0.0;
  const double shrink = r.goal_by_center ? 0.0 : r.radius;

  std::vector<Point2> corners;
  const double pi = std::numbers::pi;
  for (const auto& o : w.obstacles) {
    if (const auto* c = std::get_if<Circle>(&o)) {
      arc_vertices(c->center, c->radius + r.radius, 0.0, 2.0 * pi, arc_segments, corners);
    } else {
      const auto& b = std::get<Rect>(o);
      const Point2 cs[4] = {b.max, {b.min.x, b.max.y}, b.min, {b.max.x, b.min.y}};
      for (int q = 0; q < 4; ++q) arc_vertices(cs[q], r.radius, q * pi / 2.0, pi / 2.0, arc_segments, corners);
    }
  }
  std::vector<Point2> nodes{r.init};
  for (Point2 p : corners)
    if (point_free(w, p, r.radius)) nodes.push_back(p);

  std::vector<Point2> targets;
  for (Point2 p : goal_boundary_samples(r.goal, shrink))
    if (in_goal(r, p) && point_free(w, p, r.radius)) targets.push_back(p);

  const std::size_t n = nodes.size();
  std::vector<double> dist(n, kInf);
  std::vector<char> done(n, 0);
  dist[0] = 0.0;
  double best = kInf;
  for (std::size_t iter = 0; iter < n; ++iter) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!done[v] && dist[v] < kInf && (u == n || dist[v] < dist[u])) u = v;
    if (u == n || dist[u] >= best) break;
    done[u] = 1;
    const Point2 pu = nodes[u];
    const Point2 near = nearest_goal_point(r.goal, shrink, pu);
    if (in_goal(r, near) && point_free(w, near, r.radius) && segment_free(w, pu, near, r.radius))
      best = std::min(best, dist[u] + distance(pu, near));
    for (Point2 t : targets) {
      const double c = dist[u] + distance(pu, t);
      if (c < best && segment_free(w, pu, t, r.radius)) best = c;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v]) continue;
      const double c = dist[u] + distance(pu, nodes[v]);
      if (c < dist[v] && segment_free(w, pu, nodes[v], r.radius)) dist[v] = c;
    }
  }
  if (best == kInf) return std::nullopt;
  return best;
}

std::optional<double> dense_reference(const Workspace& w, const RobotSpec& r, int k_ref, std::uint64_t seed)
{
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0xdeu};
  Rng rng(seq);
  RadiusSchedule sched;
  sched.eta = default_eta(w);
  sched.gamma = default_gamma(w, r, rng);
  RandomGraph g(r.init, sched.eta);
  for (int k = 1; k <= k_ref; ++k) extend(g, w, r, sample(w, r, rng), sched, k);

  // Every edge is collision-free in both directions, so search the graph as
  // an undirected one; the insertion order only matters to the planner.
  std::vector<std::vector<RandomGraph::Edge>> adj(g.size());
  for (std::size_t v = 0; v < g.size(); ++v)
    for (const auto& e : g.out_edges(v)) {
      adj[v].push_back(e);
      adj[e.to].push_back({v, e.length});
    }
  std::vector<double> dist(g.size(), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[0] = 0.0;
  queue.push({0.0, 0});
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[v]) continue;
    if (in_goal(r, g.vertex(v))) return d;
    for (const auto& e : adj[v])
      if (d + e.length < dist[e.to]) {
        dist[e.to] = d + e.length;
        queue.push({dist[e.to], e.to});
      }
  }
  return std::nullopt;
}

} // namespace inash
