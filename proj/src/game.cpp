#include "game.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace inash {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

CostVector CostVector::top(std::size_t p) { return {std::vector<double>(p, kInf)}; }
CostVector CostVector::zeros(std::size_t p) { return {std::vector<double>(p, 0.0)}; }

bool CostVector::is_top() const
{
  return !components.empty() &&
         std::all_of(components.begin(), components.end(), [](double c) { return c == kInf; });
}

double CostVector::scalar() const
{
  double s = 0.0;
  for (double c : components) s += c;
  return s;
}

CostVector& CostVector::operator+=(const CostVector& o)
{
  if (o.size() != size()) throw std::invalid_argument("cost dimension mismatch");
  for (std::size_t i = 0; i < size(); ++i) components[i] += o.components[i];
  return *this;
}

bool pleq(const CostVector& a, const CostVector& b)
{
  if (a.size() != b.size()) throw std::invalid_argument("cost dimension mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a.components[i] <= b.components[i])) return false;
  return true;
}

bool plt(const CostVector& a, const CostVector& b) { return pleq(a, b) && a != b; }

std::size_t cost_dimension(CostMode m) { return m == CostMode::Length ? 1 : 2; }

CostVector path_cost(const TimedPath& path, CostMode m)
{
  double length = 0.0;
  for (std::size_t j = 1; j < path.vertices.size(); ++j) length += distance(path.vertices[j - 1], path.vertices[j]);
  if (m == CostMode::Length) return {{length}};
  return {{length, path.duration()}};
}

bool interval_clear(Point2 p0, Point2 p1, double t0, double t1, double radius, const TimedPath& other,
                    double margin)
{
  if (other.vertices.empty()) return true;
  double end = t1;
  if (other.vanish_at_end) {
    if (t0 > other.duration()) return true;
    end = std::min(end, other.duration());
  }
  const double thr = radius + other.radius + margin;
  const double thr2 = thr * thr;
  const double span = t1 - t0;
  auto self_at = [&](double t) { return span > 0.0 ? p0 + ((t - t0) / span) * (p1 - p0) : p0; };

  auto clear_on = [&](double u0, double u1) {
    const Point2 d0 = self_at(u0) - other.position(u0);
    const Point2 d1 = self_at(u1) - other.position(u1);
    const Point2 dd = d1 - d0;
    const double den = dot(dd, dd);
    const double s = den > 0.0 ? std::clamp(-dot(d0, dd) / den, 0.0, 1.0) : 0.0;
    const Point2 m = d0 + s * dd;
    return dot(m, m) >= thr2;
  };

  double u = t0;
  auto it = std::upper_bound(other.times.begin(), other.times.end(), t0);
  for (; it != other.times.end() && *it < end; ++it) {
    if (!clear_on(u, *it)) return false;
    u = *it;
  }
  return clear_on(u, end);
}

bool collision_free_pair(const TimedPath& a, const TimedPath& b, double margin)
{
  if (a.vertices.empty() || b.vertices.empty()) return true;
  const double ta = a.duration();
  const double tb = b.duration();
  double window = std::max(ta, tb);
  if (a.vanish_at_end) window = std::min(window, ta);
  if (b.vanish_at_end) window = std::min(window, tb);

  if (a.vertices.size() == 1 || window == 0.0)
    return interval_clear(a.vertices.front(), a.vertices.front(), 0.0, window, a.radius, b, margin);
  for (std::size_t j = 0; j + 1 < a.vertices.size(); ++j) {
    const double t0 = a.times[j];
    if (t0 > window) break;
    double t1 = a.times[j + 1];
    Point2 p1 = a.vertices[j + 1];
    if (t1 > window) {
      p1 = a.position(window);
      t1 = window;
    }
    if (!interval_clear(a.vertices[j], p1, t0, t1, a.radius, b, margin)) return false;
  }
  if (window > ta && !interval_clear(a.vertices.back(), a.vertices.back(), ta, window, a.radius, b, margin))
    return false;
  return true;
}

bool collision_free_path(const TimedPath& path, const PathSet& others, double margin, std::uint64_t* calls)
{
  if (calls) ++*calls;
  for (const TimedPath* o : others)
    if (!collision_free_pair(path, *o, margin)) return false;
  return true;
}

std::string algorithm_name(Algorithm a)
{
  switch (a) {
  case Algorithm::INash: return "inash";
  case Algorithm::Prioritized: return "prioritized";
  case Algorithm::AnytimePrioritized: return "anytime-prioritized";
  case Algorithm::IOptimal: return "ioptimal";
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& name)
{
  for (auto a : {Algorithm::INash, Algorithm::Prioritized, Algorithm::AnytimePrioritized, Algorithm::IOptimal})
    if (algorithm_name(a) == name) return a;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

std::uint64_t effective_seed(const Scenario& s, const PlannerOptions& o) { return o.seed.value_or(s.seed); }

double default_eta(const Workspace& w)
{
  const double side = std::max(w.bounds.max.x - w.bounds.min.x, w.bounds.max.y - w.bounds.min.y);
  return std::max(1.0, 0.1 * side);
}

Roadmaps::Roadmaps(const Scenario& s, const PlannerOptions& o)
    : workspace_(s.workspace), robots_(s.robots)
{
  extend_opts_.strict_nearest_only_edges = o.strict_nearest_only_edges;
  const std::uint64_t seed = effective_seed(s, o);
  const double eta = o.eta > 0.0 ? o.eta : default_eta(workspace_);
  const auto lo = static_cast<std::uint32_t>(seed);
  const auto hi = static_cast<std::uint32_t>(seed >> 32);
  for (auto& r : robots_) {
    r.goal_by_center = o.goal_by_center;
    const auto id = static_cast<std::uint32_t>(r.id);
    std::seed_seq graph_seq{lo, hi, id, 0x5eedu};
    rngs_.emplace_back(graph_seq);
    RadiusSchedule sched;
    sched.eta = eta;
    if (o.gamma > 0.0) {
      sched.gamma = o.gamma;
    } else {
      std::seed_seq gamma_seq{lo, hi, id, 0x9a77u};
      Rng gamma_rng(gamma_seq);
      sched.gamma = default_gamma(workspace_, r, gamma_rng);
    }
    schedules_.push_back(sched);
    graphs_.emplace_back(r.init, eta);
    goal_seen_.push_back(in_goal(r, r.init) ? 1 : 0);
  }
}

void Roadmaps::grow(int k)
{
  k_ = k;
  for (std::size_t i = 0; i < robots_.size(); ++i) {
    const Point2 x_rand = sample(workspace_, robots_[i], rngs_[i]);
    const auto v = extend(graphs_[i], workspace_, robots_[i], x_rand, schedules_[i], k, extend_opts_);
    if (v && in_goal(robots_[i], graphs_[i].vertex(*v))) goal_seen_[i] = 1;
  }
}

PlannedPath make_planned_path(const RandomGraph& g, const VertexPath& ids, const RobotSpec& r,
                              const PlannerOptions& o)
{
  std::vector<Point2> pts;
  pts.reserve(ids.size());
  for (auto v : ids) pts.push_back(g.vertex(v));
  PlannedPath p;
  p.vertex_ids = ids;
  p.path = make_timed_path(r.id, r.radius, std::move(pts), o.speed);
  p.path.vanish_at_end = o.vanish_at_goal;
  p.cost = path_cost(p.path, o.cost_mode);
  return p;
}

std::vector<PlannedPath> feasible_paths(const std::vector<PlannedPath>& candidates, const PathSet& others,
                                        const RobotSpec& r, const Workspace& w, double margin,
                                        std::uint64_t* calls)
{
  std::vector<PlannedPath> out;
  for (const auto& c : candidates) {
    if (!accepts(reach_avoid_automaton(), word_of_path(c.path, r, w))) continue;
    if (!collision_free_path(c.path, others, margin, calls)) continue;
    out.push_back(c);
  }
  return out;
}

namespace {

enum class SearchMode
{
  First,
  Cheapest,
};

using Acc = std::array<double, 2>;

SearchResult search_paths(const SearchContext& ctx, const CostVector& bound, SearchMode mode)
{
  const RandomGraph& g = ctx.graph;
  const PlannerOptions& o = ctx.options;
  const std::size_t p = cost_dimension(o.cost_mode);
  if (bound.size() != p) throw std::invalid_argument("bound has wrong cost dimension");

  SearchResult res;
  const std::size_t n = g.size();
  std::vector<char> goal(n);
  for (std::size_t v = 0; v < n; ++v) goal[v] = in_goal(ctx.robot, g.vertex(v)) ? 1 : 0;

  auto edge_cost = [&](double len) { return Acc{len, len / o.speed}; };
  // Componentwise lower bound on the cost of completing a path from v.
  std::vector<Acc> lb(n, Acc{kInf, kInf});
  for (std::size_t v = n; v-- > 0;) {
    if (goal[v]) {
      lb[v] = {0.0, 0.0};
      continue;
    }
    for (const auto& e : g.out_edges(v)) {
      const Acc c = edge_cost(e.length);
      for (std::size_t l = 0; l < p; ++l) lb[v][l] = std::min(lb[v][l], c[l] + lb[e.to][l]);
    }
  }
  if (lb[0][0] == kInf) return res;

  std::optional<double> incumbent;
  auto scalar = [&](const Acc& a) {
    double s = 0.0;
    for (std::size_t l = 0; l < p; ++l) s += a[l];
    return s;
  };
  // Relaxed test that q could still lead to a path strictly below the bound.
  auto can_improve = [&](const Acc& q) {
    bool strictly = false;
    for (std::size_t l = 0; l < p; ++l) {
      const double relaxed = q[l] - 1e-9 * std::max(1.0, std::abs(q[l]));
      if (relaxed > bound[l]) return false;
      if (relaxed < bound[l]) strictly = true;
    }
    if (!strictly) return false;
    if (incumbent) {
      const double s = scalar(q);
      if (s - 1e-9 * std::max(1.0, s) >= *incumbent) return false;
    }
    return true;
  };

  const std::size_t cap = o.path_cap;
  const std::uint64_t node_budget = static_cast<std::uint64_t>(std::max<std::size_t>(cap, 1)) * 200;
  std::uint64_t expansions = 0;
  bool stop = false;

  auto reach_leaf = [&](const VertexPath& ids) {
    if (res.leaves == cap) {
      res.cap_hit = true;
      stop = true;
      return;
    }
    ++res.leaves;
    PlannedPath cand = make_planned_path(g, ids, ctx.robot, o);
    if (!plt(cand.cost, bound)) return;
    if (incumbent && !(cand.cost.scalar() < *incumbent)) return;
    if (!accepts(reach_avoid_automaton(), word_of_path(cand.path, ctx.robot, ctx.workspace))) return;
    if (!collision_free_path(cand.path, ctx.others, o.margin, &res.collision_checks)) return;
    incumbent = cand.cost.scalar();
    res.path = std::move(cand);
    if (mode == SearchMode::First) stop = true;
  };

  VertexPath prefix{0};
  if (goal[0]) {
    reach_leaf(prefix);
    return res;
  }

  struct Frame
  {
    std::size_t vertex;
    std::vector<std::size_t> order;  // edge indices in visiting order
    std::size_t next = 0;
    Acc cost;
    double time;
  };
  auto make_frame = [&](std::size_t v, Acc cost, double time) {
    Frame f{v, {}, 0, cost, time};
    const auto& edges = g.out_edges(v);
    f.order.resize(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) f.order[i] = i;
    if (mode == SearchMode::Cheapest) {
      std::stable_sort(f.order.begin(), f.order.end(), [&](std::size_t a, std::size_t b) {
        return edges[a].length + lb[edges[a].to][0] < edges[b].length + lb[edges[b].to][0];
      });
    }
    return f;
  };

  std::vector<Frame> stack;
  stack.push_back(make_frame(0, Acc{0.0, 0.0}, 0.0));
  while (!stack.empty() && !stop) {
    Frame& f = stack.back();
    if (f.next == f.order.size()) {
      stack.pop_back();
      prefix.pop_back();
      continue;
    }
    const auto& e = g.out_edges(f.vertex)[f.order[f.next++]];
    if (lb[e.to][0] == kInf) continue;
    if (++expansions > node_budget) {
      res.cap_hit = true;
      break;
    }
    const Acc step = edge_cost(e.length);
    Acc cost = f.cost;
    Acc q{};
    for (std::size_t l = 0; l < p; ++l) {
      cost[l] += step[l];
      q[l] = cost[l] + lb[e.to][l];
    }
    if (!can_improve(q)) continue;
    const double t1 = f.time + e.length / o.speed;
    const Point2 a = g.vertex(f.vertex);
    const Point2 b = g.vertex(e.to);
    bool clear = true;
    for (const TimedPath* other : ctx.others)
      if (!interval_clear(a, b, f.time, t1, ctx.robot.radius, *other, o.margin)) {
        clear = false;
        break;
      }
    if (!clear) continue;
    prefix.push_back(e.to);
    if (goal[e.to]) {
      reach_leaf(prefix);
      prefix.pop_back();
      continue;
    }
    stack.push_back(make_frame(e.to, cost, t1));
  }
  return res;
}

} // namespace

SearchResult first_improvement(const SearchContext& ctx, const CostVector& bound)
{
  return search_paths(ctx, bound, SearchMode::First);
}

SearchResult cheapest_improvement(const SearchContext& ctx, const CostVector& bound)
{
  return search_paths(ctx, bound, SearchMode::Cheapest);
}

std::vector<int> Profile::active_ids() const
{
  std::vector<int> ids;
  for (std::size_t i = 0; i < active.size(); ++i)
    if (active[i]) ids.push_back(static_cast<int>(i) + 1);
  return ids;
}

PathSet Profile::path_set(int skip) const
{
  PathSet out;
  for (std::size_t j = 0; j < paths.size(); ++j)
    if (static_cast<int>(j) != skip && paths[j]) out.push_back(&paths[j]->path);
  return out;
}

BetterResponse better_response(const RandomGraph& g, const std::optional<PlannedPath>& current,
                               const PathSet& others, const RobotSpec& r, const Workspace& w,
                               const PlannerOptions& o)
{
  const SearchContext ctx{g, r, w, others, o};
  const CostVector bound = current ? current->cost : CostVector::top(cost_dimension(o.cost_mode));
  BetterResponse out;
  out.search = o.best_response ? cheapest_improvement(ctx, bound) : first_improvement(ctx, bound);
  if (out.search.path) {
    out.path = std::move(out.search.path);
    out.search.path.reset();
    out.changed = true;
  } else {
    out.path = current;
  }
  return out;
}

IterationRecord inash_iteration(Profile& profile, const Roadmaps& maps, const PlannerOptions& o)
{
  const std::size_t n = maps.size();
  IterationRecord rec;
  rec.k = maps.k();
  profile.k = maps.k();

  for (std::size_t i = 0; i < n; ++i)
    if (!profile.active[i] && maps.has_goal_vertex(i)) profile.active[i] = 1;

  const auto active_count = static_cast<std::uint64_t>(std::count(profile.active.begin(), profile.active.end(), 1));
  // Every active robot first broadcasts its previous plan.
  rec.vartheta += active_count;

  std::vector<TimedPath> statics;
  if (o.inactive_as_static)
    for (std::size_t i = 0; i < n; ++i)
      if (!profile.active[i]) statics.push_back(static_path(maps.robot(i).id, maps.robot(i).radius, maps.robot(i).init));

  for (std::size_t i = 0; i < n; ++i) {
    if (!profile.active[i]) continue;
    PathSet others = profile.path_set(static_cast<int>(i));
    for (const auto& s : statics) others.push_back(&s);
    auto br = better_response(maps.graph(i), profile.paths[i], others, maps.robot(i), maps.workspace(), o);
    rec.theta += br.search.collision_checks;
    rec.cap_hit = rec.cap_hit || br.search.cap_hit;
    if (br.changed) {
      profile.paths[i] = std::move(br.path);
      ++rec.changed;
    }
    ++rec.vartheta;
  }

  rec.active = profile.active_ids();
  rec.costs.resize(n);
  rec.path_counts.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (profile.paths[i]) rec.costs[i] = profile.paths[i]->cost;
    if (profile.active[i]) rec.path_counts[i] = count_goal_paths(maps.graph(i), maps.robot(i));
  }
  return rec;
}

RunRecord run_inash(const Scenario& s, const PlannerOptions& o, const IterationObserver& observe)
{
  if (o.iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  Roadmaps maps(s, o);
  RunRecord run;
  run.algorithm = algorithm_name(Algorithm::INash);
  run.seed = effective_seed(s, o);
  run.options = o;
  Profile profile(maps.size());
  for (int k = 1; k <= o.iterations; ++k) {
    maps.grow(k);
    auto rec = inash_iteration(profile, maps, o);
    rec.phase = "grow";
    if (observe) observe(profile, rec);
    run.trace.push_back(std::move(rec));
  }
  if (o.settle) {
    for (int round = 0; round < o.max_settle_rounds; ++round) {
      auto rec = inash_iteration(profile, maps, o);
      rec.phase = "settle";
      if (observe) observe(profile, rec);
      const bool quiet = rec.changed == 0;
      run.trace.push_back(std::move(rec));
      if (quiet) break;
    }
  }
  run.final_profile = std::move(profile);
  run.robots = maps.robots();
  run.graphs = maps.graphs();
  run.workspace = maps.workspace();
  return run;
}

AuditReport nash_audit(const Profile& p, const std::vector<RandomGraph>& graphs,
                       const std::vector<RobotSpec>& robots, const Workspace& w, const PlannerOptions& o)
{
  AuditReport report;
  for (std::size_t i = 0; i < robots.size(); ++i) {
    RobotAudit a;
    a.id = robots[i].id;
    a.active = i < p.active.size() && p.active[i];
    a.has_path = i < p.paths.size() && p.paths[i].has_value();
    if (has_goal_vertex(graphs[i], robots[i])) {
      const PathSet others = p.path_set(static_cast<int>(i));
      const SearchContext ctx{graphs[i], robots[i], w, others, o};
      const CostVector bound = a.has_path ? p.paths[i]->cost : CostVector::top(cost_dimension(o.cost_mode));
      auto res = first_improvement(ctx, bound);
      a.cap_hit = res.cap_hit;
      if (res.path) {
        a.pass = false;
        a.deviation = std::move(res.path);
      }
    }
    report.all_pass = report.all_pass && a.pass;
    report.any_cap_hit = report.any_cap_hit || a.cap_hit;
    report.robots.push_back(std::move(a));
  }
  return report;
}

bool profile_pairwise_free(const Profile& p, double margin)
{
  for (std::size_t i = 0; i < p.paths.size(); ++i)
    for (std::size_t j = i + 1; j < p.paths.size(); ++j)
      if (p.paths[i] && p.paths[j] && !collision_free_pair(p.paths[i]->path, p.paths[j]->path, margin))
        return false;
  return true;
}

bool profile_satisfies_specs(const Profile& p, const std::vector<RobotSpec>& robots, const Workspace& w)
{
  for (std::size_t i = 0; i < p.paths.size(); ++i)
    if (p.paths[i] && !accepts(reach_avoid_automaton(), word_of_path(p.paths[i]->path, robots[i], w)))
      return false;
  return true;
}

} // namespace inash
