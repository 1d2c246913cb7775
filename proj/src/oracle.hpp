#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "game.hpp"

namespace inash {

/// Finite strategy game: robot i picks one of its candidate paths. Two
/// strategies of different robots conflict when their paths collide.
class DiscreteGame
{
public:
  /// costs[i][s] is the cost of strategy s of robot i.
  explicit DiscreteGame(std::vector<std::vector<CostVector>> costs);

  std::size_t players() const { return costs_.size(); }
  std::size_t strategies(std::size_t i) const { return costs_[i].size(); }
  const CostVector& cost(std::size_t i, std::size_t s) const { return costs_[i][s]; }
  std::size_t dimension() const { return dim_; }

  /// Symmetric; ignored when i == j.
  void set_conflict(std::size_t i, std::size_t a, std::size_t j, std::size_t b, bool conflict);
  bool conflicts(std::size_t i, std::size_t a, std::size_t j, std::size_t b) const;

  /// Optional geometry, filled when the game comes from real graphs.
  std::vector<std::vector<PlannedPath>> paths;

private:
  std::size_t index(std::size_t i, std::size_t s) const { return offset_[i] + s; }

  std::vector<std::vector<CostVector>> costs_;
  std::vector<std::size_t> offset_;
  std::size_t total_ = 0;
  std::size_t dim_ = 0;
  std::vector<char> conflict_;
};

using StrategyProfile = std::vector<std::size_t>;

struct EquilibriumReport
{
  std::uint64_t profiles = 0;
  std::uint64_t feasible = 0;
  std::vector<StrategyProfile> nash;            // Pi_NE
  std::vector<StrategyProfile> social_optima;   // Pi_SO
  std::optional<double> pos;
  std::optional<double> poa;

  /// Every social optimum is also a Nash equilibrium.
  bool so_subset_of_ne() const;
};

/// Exhaustive equilibrium analysis. With scalar_social true the social optima
/// minimize the summed scalar cost; otherwise they are the Pareto-optimal
/// feasible profiles over per-robot cost vectors. Requires at most
/// max_profiles profiles (std::invalid_argument otherwise).
EquilibriumReport brute_force_equilibria(const DiscreteGame& g, bool scalar_social = true,
                                         std::uint64_t max_profiles = 1'000'000);

bool profile_feasible(const DiscreteGame& g, const StrategyProfile& p);
double total_cost(const DiscreteGame& g, const StrategyProfile& p);

struct RandomGameParams
{
  std::size_t min_players = 2;
  std::size_t max_players = 4;
  std::size_t min_strategies = 1;
  std::size_t max_strategies = 5;
  std::size_t dimension = 1;
  double conflict_probability = 0.3;
};

DiscreteGame random_discrete_game(const RandomGameParams& p, std::mt19937_64& rng);

/// Game over the cheapest (up to per_robot) goal paths of each robot that
/// satisfy its specification; conflicts come from the exact collision check.
DiscreteGame discrete_game_from_graphs(const std::vector<RandomGraph>& graphs, const std::vector<RobotSpec>& robots,
                                       const Workspace& w, const PlannerOptions& o, std::size_t per_robot = 5);

} // namespace inash
