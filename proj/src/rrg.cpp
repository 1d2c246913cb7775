#include "rrg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace inash {

RandomGraph::RandomGraph(Point2 root, double cell_size) : cell_(cell_size > 0.0 ? cell_size : 1.0)
{
  add_vertex(root);
}

std::size_t RandomGraph::add_vertex(Point2 p)
{
  const std::size_t id = vertices_.size();
  vertices_.push_back(p);
  out_.emplace_back();
  in_degree_.push_back(0);
  const auto cx = cell_of(p.x);
  const auto cy = cell_of(p.y);
  if (id == 0) {
    min_cx_ = max_cx_ = cx;
    min_cy_ = max_cy_ = cy;
  } else {
    min_cx_ = std::min(min_cx_, cx);
    max_cx_ = std::max(max_cx_, cx);
    min_cy_ = std::min(min_cy_, cy);
    max_cy_ = std::max(max_cy_, cy);
  }
  grid_[key(cx, cy)].push_back(id);
  return id;
}

void RandomGraph::add_edge(std::size_t from, std::size_t to)
{
  if (from >= to || to >= vertices_.size()) throw std::logic_error("edge must point to a later vertex");
  // Out-edge lists stay sorted by target because targets are added in order.
  out_[from].push_back({to, distance(vertices_[from], vertices_[to])});
  ++in_degree_[to];
  ++edge_count_;
}

std::size_t RandomGraph::nearest(Point2 x) const
{
  const auto cx = cell_of(x.x);
  const auto cy = cell_of(x.y);
  const std::int64_t max_ring = std::max({std::abs(cx - min_cx_), std::abs(cx - max_cx_), std::abs(cy - min_cy_),
                                          std::abs(cy - max_cy_)});
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  auto visit = [&](std::int64_t ix, std::int64_t iy) {
    const auto it = grid_.find(key(ix, iy));
    if (it == grid_.end()) return;
    for (std::size_t v : it->second) {
      const double d = distance(vertices_[v], x);
      if (d < best_d || (d == best_d && v < best)) {
        best_d = d;
        best = v;
      }
    }
  };
  for (std::int64_t ring = 0; ring <= max_ring; ++ring) {
    if (ring == 0) {
      visit(cx, cy);
    } else {
      for (std::int64_t i = -ring; i <= ring; ++i) {
        visit(cx + i, cy - ring);
        visit(cx + i, cy + ring);
      }
      for (std::int64_t i = -ring + 1; i <= ring - 1; ++i) {
        visit(cx - ring, cy + i);
        visit(cx + ring, cy + i);
      }
    }
    // Anything outside this ring is at least ring * cell away.
    if (best_d < static_cast<double>(ring) * cell_) break;
  }
  return best;
}

std::vector<std::size_t> RandomGraph::near_vertices(Point2 x, double radius) const
{
  std::vector<std::size_t> out;
  const auto x0 = std::max(cell_of(x.x - radius), min_cx_);
  const auto x1 = std::min(cell_of(x.x + radius), max_cx_);
  const auto y0 = std::max(cell_of(x.y - radius), min_cy_);
  const auto y1 = std::min(cell_of(x.y + radius), max_cy_);
  for (auto ix = x0; ix <= x1; ++ix)
    for (auto iy = y0; iy <= y1; ++iy) {
      const auto it = grid_.find(key(ix, iy));
      if (it == grid_.end()) continue;
      for (std::size_t v : it->second)
        if (distance(vertices_[v], x) <= radius) out.push_back(v);
    }
  std::sort(out.begin(), out.end());
  return out;
}

double connection_radius(const RadiusSchedule& s, int k)
{
  if (k <= 1) return 0.0;
  const double kk = static_cast<double>(k);
  const double r = s.gamma * std::pow(std::log(kk) / kk, 1.0 / s.dimension);
  return std::min(r, s.eta);
}

double default_gamma(const Workspace& w, const RobotSpec& r, Rng& rng, int samples)
{
  std::uniform_real_distribution<double> ux(w.bounds.min.x, w.bounds.max.x);
  std::uniform_real_distribution<double> uy(w.bounds.min.y, w.bounds.max.y);
  int hits = 0;
  for (int i = 0; i < samples; ++i) {
    const double x = ux(rng);
    const double y = uy(rng);
    if (point_free(w, {x, y}, r.radius)) ++hits;
  }
  const double free_area = area(w.bounds) * hits / samples;
  constexpr double n = 2.0;
  return 2.0 * std::pow((1.0 + 1.0 / n) * free_area / std::numbers::pi, 1.0 / n);
}

Point2 sample(const Workspace& w, const RobotSpec& r, Rng& rng, int max_rejections)
{
  std::uniform_real_distribution<double> ux(w.bounds.min.x, w.bounds.max.x);
  std::uniform_real_distribution<double> uy(w.bounds.min.y, w.bounds.max.y);
  for (int i = 0; i < max_rejections; ++i) {
    const double x = ux(rng);
    const double y = uy(rng);
    if (point_free(w, {x, y}, r.radius)) return {x, y};
  }
  throw SamplingError("free space too small: no free sample after " + std::to_string(max_rejections) + " draws");
}

Point2 steer(Point2 x, Point2 y, double eta)
{
  const double d = distance(x, y);
  if (d <= eta) return y;
  return x + (eta / d) * (y - x);
}

std::optional<std::size_t> extend(RandomGraph& g, const Workspace& w, const RobotSpec& r, Point2 x_rand,
                                  const RadiusSchedule& sched, int k, const ExtendOptions& opts)
{
  g.iteration = k;
  const std::size_t nearest = g.nearest(x_rand);
  const Point2 x_new = steer(g.vertex(nearest), x_rand, sched.eta);
  if (!segment_free(w, g.vertex(nearest), x_new, r.radius)) return std::nullopt;

  const auto near = opts.strict_nearest_only_edges ? std::vector<std::size_t>{}
                                                   : g.near_vertices(x_new, connection_radius(sched, k));
  const std::size_t id = g.add_vertex(x_new);
  bool nearest_linked = false;
  for (std::size_t v : near) {
    if (v == nearest) {
      g.add_edge(v, id);
      nearest_linked = true;
    } else if (segment_free(w, g.vertex(v), x_new, r.radius)) {
      g.add_edge(v, id);
    }
  }
  // The nearest vertex can sit outside a small radius; it is always linked.
  if (!nearest_linked) g.add_edge(nearest, id);
  return id;
}

namespace {

std::vector<char> goal_flags(const RandomGraph& g, const RobotSpec& r)
{
  std::vector<char> flags(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) flags[v] = in_goal(r, g.vertex(v)) ? 1 : 0;
  return flags;
}

std::vector<std::uint64_t> path_counts(const RandomGraph& g, const std::vector<char>& goal)
{
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> count(g.size(), 0);
  for (std::size_t v = g.size(); v-- > 0;) {
    if (goal[v]) {
      count[v] = 1;
      continue;
    }
    std::uint64_t c = 0;
    for (const auto& e : g.out_edges(v)) c = (kMax - c < count[e.to]) ? kMax : c + count[e.to];
    count[v] = c;
  }
  return count;
}

} // namespace

bool has_goal_vertex(const RandomGraph& g, const RobotSpec& r)
{
  for (const auto& p : g.vertices())
    if (in_goal(r, p)) return true;
  return false;
}

std::uint64_t count_goal_paths(const RandomGraph& g, const RobotSpec& r)
{
  return path_counts(g, goal_flags(g, r))[0];
}

GoalPaths goal_paths(const RandomGraph& g, const RobotSpec& r, std::size_t cap)
{
  GoalPaths out;
  const auto goal = goal_flags(g, r);
  const auto count = path_counts(g, goal);
  if (count[0] == 0) return out;

  struct Frame
  {
    std::size_t vertex;
    std::size_t next_edge;
  };
  std::vector<Frame> stack{{0, 0}};
  VertexPath prefix{0};
  if (goal[0]) {
    out.paths.push_back(prefix);
    return out;
  }
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& edges = g.out_edges(f.vertex);
    if (f.next_edge == edges.size()) {
      stack.pop_back();
      prefix.pop_back();
      continue;
    }
    const std::size_t child = edges[f.next_edge++].to;
    if (count[child] == 0) continue;
    if (goal[child]) {
      if (out.paths.size() == cap) {
        out.truncated = true;
        return out;
      }
      prefix.push_back(child);
      out.paths.push_back(prefix);
      prefix.pop_back();
      continue;
    }
    prefix.push_back(child);
    stack.push_back({child, 0});
  }
  return out;
}

std::vector<RankedPath> cheapest_goal_paths(const RandomGraph& g, const RobotSpec& r, std::size_t k)
{
  if (k == 0) return {};
  const auto goal = goal_flags(g, r);
  struct Entry
  {
    double cost;
    std::size_t child;  // npos at a goal vertex
    std::size_t rank;   // index into the child's list
  };
  constexpr auto npos = static_cast<std::size_t>(-1);
  std::vector<std::vector<Entry>> best(g.size());
  for (std::size_t v = g.size(); v-- > 0;) {
    if (goal[v]) {
      best[v].push_back({0.0, npos, 0});
      continue;
    }
    std::vector<Entry> cand;
    for (const auto& e : g.out_edges(v))
      for (std::size_t j = 0; j < best[e.to].size(); ++j) cand.push_back({e.length + best[e.to][j].cost, e.to, j});
    std::stable_sort(cand.begin(), cand.end(), [](const Entry& a, const Entry& b) { return a.cost < b.cost; });
    if (cand.size() > k) cand.resize(k);
    best[v] = std::move(cand);
  }
  std::vector<RankedPath> out;
  for (const auto& head : best[0]) {
    RankedPath p{head.cost, {0}};
    Entry cur = head;
    while (cur.child != npos) {
      p.vertices.push_back(cur.child);
      cur = best[cur.child][cur.rank];
    }
    out.push_back(std::move(p));
  }
  return out;
}

} // namespace inash
