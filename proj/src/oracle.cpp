#include "oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "rrg.hpp"

namespace inash {

DiscreteGame::DiscreteGame(std::vector<std::vector<CostVector>> costs) : costs_(std::move(costs))
{
  for (const auto& row : costs_) {
    offset_.push_back(total_);
    total_ += row.size();
    for (const auto& c : row) {
      if (dim_ == 0) dim_ = c.size();
      if (c.size() != dim_ || dim_ == 0) throw std::invalid_argument("inconsistent cost dimensions");
    }
  }
  conflict_.assign(total_ * total_, 0);
}

void DiscreteGame::set_conflict(std::size_t i, std::size_t a, std::size_t j, std::size_t b, bool conflict)
{
  if (i == j) return;
  const std::size_t u = index(i, a);
  const std::size_t v = index(j, b);
  conflict_[u * total_ + v] = conflict_[v * total_ + u] = conflict ? 1 : 0;
}

bool DiscreteGame::conflicts(std::size_t i, std::size_t a, std::size_t j, std::size_t b) const
{
  if (i == j) return false;
  return conflict_[index(i, a) * total_ + index(j, b)] != 0;
}

bool profile_feasible(const DiscreteGame& g, const StrategyProfile& p)
{
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (g.conflicts(i, p[i], j, p[j])) return false;
  return true;
}

double total_cost(const DiscreteGame& g, const StrategyProfile& p)
{
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += g.cost(i, p[i]).scalar();
  return s;
}

bool EquilibriumReport::so_subset_of_ne() const
{
  return std::all_of(social_optima.begin(), social_optima.end(), [&](const StrategyProfile& s) {
    return std::find(nash.begin(), nash.end(), s) != nash.end();
  });
}

namespace {

bool deviation_exists(const DiscreteGame& g, const StrategyProfile& p)
{
  for (std::size_t i = 0; i < p.size(); ++i) {
    StrategyProfile q = p;
    for (std::size_t s = 0; s < g.strategies(i); ++s) {
      if (s == p[i]) continue;
      q[i] = s;
      if (plt(g.cost(i, s), g.cost(i, p[i])) && profile_feasible(g, q)) return true;
    }
  }
  return false;
}

// a Pareto-dominates b over per-robot costs.
bool dominates(const DiscreteGame& g, const StrategyProfile& a, const StrategyProfile& b)
{
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!pleq(g.cost(i, a[i]), g.cost(i, b[i]))) return false;
    if (g.cost(i, a[i]) != g.cost(i, b[i])) strict = true;
  }
  return strict;
}

} // namespace

EquilibriumReport brute_force_equilibria(const DiscreteGame& g, bool scalar_social, std::uint64_t max_profiles)
{
  EquilibriumReport rep;
  const std::size_t n = g.players();
  std::uint64_t product = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (g.strategies(i) == 0) return rep;
    product *= g.strategies(i);
    if (product > max_profiles) throw std::invalid_argument("game too large for exhaustive enumeration");
  }
  if (n == 0) return rep;

  std::vector<StrategyProfile> feasible;
  StrategyProfile p(n, 0);
  while (true) {
    ++rep.profiles;
    if (profile_feasible(g, p)) feasible.push_back(p);
    std::size_t d = n;
    while (d-- > 0) {
      if (++p[d] < g.strategies(d)) break;
      p[d] = 0;
    }
    if (d == static_cast<std::size_t>(-1)) break;
  }
  rep.feasible = feasible.size();
  if (feasible.empty()) return rep;

  for (const auto& f : feasible)
    if (!deviation_exists(g, f)) rep.nash.push_back(f);

  if (scalar_social) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& f : feasible) best = std::min(best, total_cost(g, f));
    for (const auto& f : feasible)
      if (total_cost(g, f) == best) rep.social_optima.push_back(f);
  } else {
    for (const auto& f : feasible) {
      const bool dominated =
          std::any_of(feasible.begin(), feasible.end(), [&](const StrategyProfile& h) { return dominates(g, h, f); });
      if (!dominated) rep.social_optima.push_back(f);
    }
  }

  if (!rep.nash.empty() && !rep.social_optima.empty()) {
    double so = std::numeric_limits<double>::infinity();
    for (const auto& s : rep.social_optima) so = std::min(so, total_cost(g, s));
    double ne_min = std::numeric_limits<double>::infinity();
    double ne_max = 0.0;
    for (const auto& e : rep.nash) {
      ne_min = std::min(ne_min, total_cost(g, e));
      ne_max = std::max(ne_max, total_cost(g, e));
    }
    if (so > 0.0) {
      rep.pos = ne_min / so;
      rep.poa = ne_max / so;
    } else if (ne_min == 0.0) {
      rep.pos = 1.0;
      if (ne_max == 0.0) rep.poa = 1.0;
    }
  }
  return rep;
}

DiscreteGame random_discrete_game(const RandomGameParams& params, std::mt19937_64& rng)
{
  std::uniform_int_distribution<std::size_t> players(params.min_players, params.max_players);
  std::uniform_int_distribution<std::size_t> strategies(params.min_strategies, params.max_strategies);
  // Coarse integer costs make ties common, which is where inclusion can break.
  std::uniform_int_distribution<int> cost(1, 6);
  std::bernoulli_distribution conflict(params.conflict_probability);

  const std::size_t n = players(rng);
  std::vector<std::vector<CostVector>> costs(n);
  for (auto& row : costs) {
    row.resize(strategies(rng));
    for (auto& c : row) {
      c.components.resize(params.dimension);
      for (auto& x : c.components) x = cost(rng);
    }
  }
  DiscreteGame g(std::move(costs));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t a = 0; a < g.strategies(i); ++a)
        for (std::size_t b = 0; b < g.strategies(j); ++b) g.set_conflict(i, a, j, b, conflict(rng));
  return g;
}

DiscreteGame discrete_game_from_graphs(const std::vector<RandomGraph>& graphs, const std::vector<RobotSpec>& robots,
                                       const Workspace& w, const PlannerOptions& o, std::size_t per_robot)
{
  const std::size_t n = robots.size();
  std::vector<std::vector<PlannedPath>> paths(n);
  std::vector<std::vector<CostVector>> costs(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Ask for extra candidates so a few spec violations do not starve the list.
    for (const auto& ranked : cheapest_goal_paths(graphs[i], robots[i], 4 * per_robot)) {
      if (paths[i].size() == per_robot) break;
      auto p = make_planned_path(graphs[i], ranked.vertices, robots[i], o);
      if (!accepts(reach_avoid_automaton(), word_of_path(p.path, robots[i], w))) continue;
      costs[i].push_back(p.cost);
      paths[i].push_back(std::move(p));
    }
  }
  DiscreteGame g(costs);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t a = 0; a < paths[i].size(); ++a)
        for (std::size_t b = 0; b < paths[j].size(); ++b)
          g.set_conflict(i, a, j, b, !collision_free_pair(paths[i][a].path, paths[j][b].path, o.margin));
  g.paths = std::move(paths);
  return g;
}

} // namespace inash
