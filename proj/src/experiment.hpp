#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "game.hpp"
#include "scenario_io.hpp"
#include "scenarios.hpp"

namespace inash {

enum class ScenarioSource
{
  Fixed,   // one scenario shared by every trial
  Random,  // a fresh random scenario per trial, generated from the trial seed
};

struct ExperimentConfig
{
  ScenarioSource source = ScenarioSource::Fixed;
  Scenario scenario;
  RandomScenarioParams random;
  Algorithm algorithm = Algorithm::INash;
  int trials = 20;
  std::uint64_t base_seed = 1;  // trial t uses base_seed + t
  PlannerOptions options;
  bool keep_runs = false;
};

struct RobotTrial
{
  int id = 0;
  bool reached = false;
  std::optional<double> length;
  std::optional<double> reference;
  std::optional<double> ratio;
};

struct TrialResult
{
  int index = 0;
  std::uint64_t seed = 0;
  std::string error;  // empty on success
  std::vector<RobotTrial> robots;
  std::size_t iterations = 0;
  std::uint64_t theta_total = 0;
  std::uint64_t vartheta_total = 0;
  bool cap_hit = false;
};

struct RobotMetrics
{
  int id = 0;
  int successes = 0;
  int trials = 0;
  std::optional<double> mean_ratio;   // over trials where the robot reached its goal
  std::optional<double> mean_length;
};

struct MetricsTable
{
  std::string algorithm;
  int trials = 0;
  int failed_trials = 0;
  std::vector<RobotMetrics> robots;
  double mean_theta_per_iteration = 0.0;
  double mean_vartheta_per_iteration = 0.0;
};

struct ExperimentResult
{
  MetricsTable table;
  std::vector<TrialResult> trials;
  std::vector<RunRecord> runs;  // only with keep_runs
};

/// Scores one finished run against per-robot reference lengths.
TrialResult score_trial(const RunRecord& run, const std::vector<std::optional<double>>& references);

/// Pure function of the trial results.
MetricsTable aggregate(const std::string& algorithm, const std::vector<TrialResult>& trials);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::string metrics_csv(const MetricsTable& t);
json metrics_to_json(const MetricsTable& t);
json trials_to_json(const std::vector<TrialResult>& trials);
json experiment_to_json(const ExperimentResult& r);

/// Spearman rank correlation with average ranks for ties; nothing when either
/// side is constant.
std::optional<double> spearman(const std::vector<double>& a, const std::vector<double>& b);

} // namespace inash
