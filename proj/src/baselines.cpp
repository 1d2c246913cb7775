#include "baselines.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace inash {

namespace {

RunRecord start_record(Algorithm a, const Scenario& s, const PlannerOptions& o)
{
  if (o.iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  RunRecord run;
  run.algorithm = algorithm_name(a);
  run.seed = effective_seed(s, o);
  run.options = o;
  return run;
}

void finish_record(RunRecord& run, Profile profile, const Roadmaps& maps)
{
  run.final_profile = std::move(profile);
  run.robots = maps.robots();
  run.graphs = maps.graphs();
  run.workspace = maps.workspace();
}

void fill_costs(IterationRecord& rec, const Profile& p, const Roadmaps& maps)
{
  const std::size_t n = maps.size();
  rec.k = maps.k();
  rec.active = p.active_ids();
  rec.costs.assign(n, std::nullopt);
  rec.path_counts.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (p.paths[i]) rec.costs[i] = p.paths[i]->cost;
    if (p.active[i]) rec.path_counts[i] = count_goal_paths(maps.graph(i), maps.robot(i));
  }
}

PathSet higher_priority(const Profile& p, std::size_t i)
{
  PathSet out;
  for (std::size_t j = 0; j < i; ++j)
    if (p.paths[j]) out.push_back(&p.paths[j]->path);
  return out;
}

bool same_path(const std::optional<PlannedPath>& a, const std::optional<PlannedPath>& b)
{
  if (a.has_value() != b.has_value()) return false;
  return !a || a->vertex_ids == b->vertex_ids;
}

} // namespace

RunRecord prioritized_plan(const Scenario& s, const PlannerOptions& o)
{
  RunRecord run = start_record(Algorithm::Prioritized, s, o);
  Roadmaps maps(s, o);
  for (int k = 1; k <= o.iterations; ++k) maps.grow(k);

  Profile profile(maps.size());
  profile.k = maps.k();
  IterationRecord rec;
  rec.phase = "final";
  const CostVector top = CostVector::top(cost_dimension(o.cost_mode));
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (!maps.has_goal_vertex(i)) continue;
    profile.active[i] = 1;
    const PathSet others = higher_priority(profile, i);
    const SearchContext ctx{maps.graph(i), maps.robot(i), maps.workspace(), others, o};
    auto res = cheapest_improvement(ctx, top);
    rec.theta += res.collision_checks;
    rec.cap_hit = rec.cap_hit || res.cap_hit;
    if (res.path) {
      profile.paths[i] = std::move(res.path);
      ++rec.changed;
    }
    ++rec.vartheta;
  }
  fill_costs(rec, profile, maps);
  run.trace.push_back(std::move(rec));
  finish_record(run, std::move(profile), maps);
  return run;
}

RunRecord anytime_prioritized_plan(const Scenario& s, const PlannerOptions& o)
{
  RunRecord run = start_record(Algorithm::AnytimePrioritized, s, o);
  Roadmaps maps(s, o);
  Profile profile(maps.size());
  const CostVector top = CostVector::top(cost_dimension(o.cost_mode));
  for (int k = 1; k <= o.iterations; ++k) {
    maps.grow(k);
    profile.k = k;
    IterationRecord rec;
    rec.phase = "grow";
    bool cascade = false;
    for (std::size_t i = 0; i < maps.size(); ++i) {
      if (!profile.active[i] && maps.has_goal_vertex(i)) profile.active[i] = 1;
      if (!profile.active[i]) continue;
      const PathSet others = higher_priority(profile, i);
      const SearchContext ctx{maps.graph(i), maps.robot(i), maps.workspace(), others, o};
      // A repaired robot starts over; an undisturbed one only looks for gains.
      const bool repick = cascade || !profile.paths[i];
      auto res = cheapest_improvement(ctx, repick ? top : profile.paths[i]->cost);
      rec.theta += res.collision_checks;
      rec.cap_hit = rec.cap_hit || res.cap_hit;
      std::optional<PlannedPath> next = res.path ? std::move(res.path) : (repick ? std::nullopt : profile.paths[i]);
      if (!same_path(next, profile.paths[i])) {
        profile.paths[i] = std::move(next);
        ++rec.changed;
        ++rec.vartheta;
        cascade = true;
      }
    }
    fill_costs(rec, profile, maps);
    run.trace.push_back(std::move(rec));
  }
  finish_record(run, std::move(profile), maps);
  return run;
}

JointSolution optimal_trajectory(const std::vector<RandomGraph>& graphs, const std::vector<RobotSpec>& robots,
                                 const Workspace& w, const PlannerOptions& o)
{
  const std::size_t n = robots.size();
  if (graphs.size() != n) throw std::invalid_argument("one graph per robot required");
  JointSolution sol;
  sol.paths.assign(n, std::nullopt);
  if (n == 0) return sol;

  std::vector<std::vector<PlannedPath>> q(n);
  std::uint64_t product = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const auto gp = goal_paths(graphs[i], robots[i], o.path_cap);
    if (gp.truncated) sol.cap_exceeded = true;
    for (const auto& ids : gp.paths) {
      auto p = make_planned_path(graphs[i], ids, robots[i], o);
      if (accepts(reach_avoid_automaton(), word_of_path(p.path, robots[i], w))) q[i].push_back(std::move(p));
    }
    sol.q_sizes.push_back(q[i].size());
    product = q[i].empty() ? 0 : (product > o.max_joint_tuples / q[i].size() ? o.max_joint_tuples + 1
                                                                            : product * q[i].size());
  }
  if (product > o.max_joint_tuples) sol.cap_exceeded = true;
  if (sol.cap_exceeded || product == 0) return sol;

  // Pairwise verdicts are shared by many tuples.
  std::vector<std::unordered_map<std::uint64_t, bool>> memo(n * n);
  auto pair_free = [&](std::size_t i, std::size_t a, std::size_t j, std::size_t b) {
    auto& m = memo[i * n + j];
    const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
    auto it = m.find(key);
    if (it != m.end()) return it->second;
    const bool free = collision_free_pair(q[i][a].path, q[j][b].path, o.margin);
    m.emplace(key, free);
    return free;
  };

  std::vector<std::size_t> idx(n, 0), best;
  CostVector best_total;
  while (true) {
    ++sol.tuples;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = i + 1; j < n && ok; ++j) ok = pair_free(i, idx[i], j, idx[j]);
    if (ok) {
      CostVector total = CostVector::zeros(cost_dimension(o.cost_mode));
      for (std::size_t i = 0; i < n; ++i) total += q[i][idx[i]].cost;
      if (best.empty() || plt(total, best_total)) {
        best = idx;
        best_total = total;
      }
    }
    std::size_t d = n;
    while (d-- > 0) {
      if (++idx[d] < q[d].size()) break;
      idx[d] = 0;
    }
    if (d == static_cast<std::size_t>(-1)) break;
  }
  if (!best.empty()) {
    sol.found = true;
    sol.total = best_total;
    for (std::size_t i = 0; i < n; ++i) sol.paths[i] = q[i][best[i]];
  }
  return sol;
}

RunRecord ioptimal_control(const Scenario& s, const PlannerOptions& o)
{
  if (s.robots.size() > o.max_ioptimal_robots)
    throw std::invalid_argument("ioptimal supports at most " + std::to_string(o.max_ioptimal_robots) + " robots");
  RunRecord run = start_record(Algorithm::IOptimal, s, o);
  Roadmaps maps(s, o);
  Profile profile(maps.size());
  for (int k = 1; k <= o.iterations; ++k) {
    maps.grow(k);
    profile.k = k;
    for (std::size_t i = 0; i < maps.size(); ++i)
      if (maps.has_goal_vertex(i)) profile.active[i] = 1;
    IterationRecord rec;
    rec.phase = "grow";
    if (std::count(profile.active.begin(), profile.active.end(), 1) == static_cast<long>(maps.size())) {
      auto sol = optimal_trajectory(maps.graphs(), maps.robots(), maps.workspace(), o);
      rec.theta = sol.tuples;
      rec.q_sizes.assign(sol.q_sizes.begin(), sol.q_sizes.end());
      if (sol.cap_exceeded) {
        rec.status = "cap_exceeded";
        rec.cap_hit = true;
      } else if (!sol.found) {
        rec.status = "infeasible";
      } else {
        for (std::size_t i = 0; i < maps.size(); ++i)
          if (!same_path(sol.paths[i], profile.paths[i])) ++rec.changed;
        profile.paths = std::move(sol.paths);
        rec.vartheta = maps.size();
      }
    } else {
      rec.status = "infeasible";
    }
    fill_costs(rec, profile, maps);
    run.trace.push_back(std::move(rec));
  }
  finish_record(run, std::move(profile), maps);
  return run;
}

RunRecord run_algorithm(Algorithm a, const Scenario& s, const PlannerOptions& o)
{
  switch (a) {
  case Algorithm::INash: return run_inash(s, o);
  case Algorithm::Prioritized: return prioritized_plan(s, o);
  case Algorithm::AnytimePrioritized: return anytime_prioritized_plan(s, o);
  case Algorithm::IOptimal: return ioptimal_control(s, o);
  }
  throw std::invalid_argument("unknown algorithm");
}

} // namespace inash
