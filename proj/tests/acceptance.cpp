// Acceptance suite: one PASS/FAIL line per criterion, exit code 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "baselines.hpp"
#include "experiment.hpp"
#include "oracle.hpp"
#include "oracles.hpp"
#include "scenarios.hpp"
#include "tasks.hpp"

using namespace inash;

namespace {

struct Outcome
{
  bool pass = false;
  std::string detail;
};

int g_failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body)
{
  const auto t0 = std::chrono::steady_clock::now();
  Outcome r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!r.pass) ++g_failures;
  std::printf("%s criterion %d (%s): %s [%.1f s]\n", r.pass ? "PASS" : "FAIL", id, name.c_str(), r.detail.c_str(),
              secs);
  std::fflush(stdout);
}

RobotSpec robot(int id, Point2 init, Shape goal, double radius = 0.5)
{
  RobotSpec r;
  r.id = id;
  r.radius = radius;
  r.init = init;
  r.goal = goal;
  return r;
}

// Straight routes of the two robots meet at the centre at the same instant.
Scenario crossing_fixture()
{
  Scenario s;
  s.workspace = {{{0, 0}, {10, 10}}, {}};
  s.robots = {robot(1, {1, 5}, Circle{{9, 5}, 0.6}), robot(2, {5, 1}, Circle{{5, 9}, 0.6})};
  return s;
}

// Shared by criteria 1, 2, 4 and 5: the 50 random runs and what was seen
// after every iteration.
struct RandomRunStats
{
  int runs = 0;
  std::uint64_t iterations = 0;
  std::uint64_t monotone_violations = 0;
  std::uint64_t vartheta_violations = 0;
  std::uint64_t theta_violations = 0;
  std::uint64_t active_violations = 0;
  std::uint64_t collision_violations = 0;
  std::uint64_t spec_violations = 0;
  int audited = 0;
  int audit_skipped = 0;
  int audit_violations = 0;
  std::string first_problem;
};

RandomRunStats& random_runs()
{
  static RandomRunStats stats = [] {
    RandomRunStats st;
    for (int t = 0; t < 50; ++t) {
      RandomScenarioParams params;
      params.robots = 4 + t % 5;
      const Scenario s = generate_random_scenario(params, 5000 + static_cast<std::uint64_t>(t));
      PlannerOptions o;
      o.iterations = 300;
      o.seed = 7000 + static_cast<std::uint64_t>(t);

      // The planner applies goal_by_center from the options to every robot.
      std::vector<RobotSpec> robots = s.robots;
      for (auto& r : robots) r.goal_by_center = o.goal_by_center;
      std::vector<std::optional<CostVector>> last(s.robots.size());
      std::vector<char> was_active(s.robots.size(), 0);
      auto note = [&](const std::string& what, const IterationRecord& rec) {
        if (st.first_problem.empty())
          st.first_problem = what + " (run " + std::to_string(t) + ", k " + std::to_string(rec.k) + ")";
      };
      const RunRecord run = run_inash(s, o, [&](const Profile& p, const IterationRecord& rec) {
        ++st.iterations;
        for (std::size_t i = 0; i < p.paths.size(); ++i) {
          if (was_active[i] && !p.active[i]) {
            ++st.active_violations;
            note("active set shrank", rec);
          }
          was_active[i] = p.active[i];
          const auto& now = rec.costs[i];
          if (last[i] && (!now || !pleq(*now, *last[i]))) {
            ++st.monotone_violations;
            note("cost increased", rec);
          }
          if (now) last[i] = now;
        }
        if (rec.vartheta != 2 * rec.active.size()) {
          ++st.vartheta_violations;
          note("vartheta != 2|A|", rec);
        }
        std::uint64_t paths = 0;
        for (auto c : rec.path_counts) paths = paths + c < paths ? UINT64_MAX : paths + c;
        if (rec.theta > paths) {
          ++st.theta_violations;
          note("theta > sum |P|", rec);
        }
        if (!profile_pairwise_free(p, o.margin)) {
          ++st.collision_violations;
          note("profile not pairwise collision-free", rec);
        }
        if (!profile_satisfies_specs(p, robots, s.workspace)) {
          ++st.spec_violations;
          note("path violates its specification", rec);
        }
      });
      ++st.runs;
      if (run.trace.back().cap_hit) {
        ++st.audit_skipped;
        continue;
      }
      const AuditReport audit = nash_audit(run.final_profile, run.graphs, run.robots, run.workspace, o);
      ++st.audited;
      if (!audit.all_pass) {
        ++st.audit_violations;
        if (st.first_problem.empty()) st.first_problem = "audit found a deviation (run " + std::to_string(t) + ")";
      }
    }
    return st;
  }();
  return stats;
}

std::string problem_suffix(const RandomRunStats& st)
{
  return st.first_problem.empty() ? "" : "; first problem: " + st.first_problem;
}

} // namespace

int main()
{
  std::setvbuf(stdout, nullptr, _IOLBF, 0);

  report(1, "monotone costs over 50 random runs", [] {
    const auto& st = random_runs();
    std::ostringstream os;
    os << st.runs << " runs, " << st.iterations << " iterations, " << st.monotone_violations
       << " cost increases, " << st.active_violations << " active-set shrinks" << problem_suffix(st);
    return Outcome{st.runs == 50 && st.monotone_violations == 0 && st.active_violations == 0, os.str()};
  });

  report(2, "graph-Nash audit of terminal profiles", [] {
    const auto& st = random_runs();
    std::ostringstream os;
    os << st.audited << " audited, " << st.audit_skipped << " skipped (enumeration cap hit), "
       << st.audit_violations << " improving deviations";
    return Outcome{st.audit_violations == 0 && st.audited > 0, os.str()};
  });

  report(3, "social optima are equilibria in 200 random games", [] {
    std::mt19937_64 rng(31337);
    const RandomGameParams params;
    int games = 0, inclusion_failures = 0, empty_ne = 0;
    double worst_pos = 0.0;
    while (games < 200) {
      const DiscreteGame g = random_discrete_game(params, rng);
      const auto rep = brute_force_equilibria(g);
      if (rep.feasible == 0) continue;
      ++games;
      if (!rep.so_subset_of_ne()) ++inclusion_failures;
      if (rep.nash.empty()) ++empty_ne;
      worst_pos = std::max(worst_pos, rep.pos ? std::abs(*rep.pos - 1.0) : 1.0);
    }
    std::ostringstream os;
    os << games << " games, " << inclusion_failures << " inclusion failures, " << empty_ne
       << " empty equilibrium sets, max |POS-1| = " << worst_pos;
    return Outcome{inclusion_failures == 0 && empty_ne == 0 && worst_pos <= 1e-9, os.str()};
  });

  report(4, "counter identities", [] {
    const auto& st = random_runs();
    PlannerOptions o;
    o.iterations = 250;
    o.path_cap = 100000;
    o.seed = 17;
    const RunRecord run = ioptimal_control(crossing_fixture(), o);
    int solved = 0, product_violations = 0;
    for (const auto& rec : run.trace) {
      if (rec.q_sizes.size() != 2 || rec.status == "cap_exceeded") continue;
      ++solved;
      if (rec.theta != rec.q_sizes[0] * rec.q_sizes[1]) ++product_violations;
    }
    std::ostringstream os;
    os << st.vartheta_violations << " vartheta violations and " << st.theta_violations << " theta violations in "
       << st.iterations << " iterations; centralized: " << product_violations << " product violations in "
       << solved << " iterations";
    return Outcome{st.vartheta_violations == 0 && st.theta_violations == 0 && product_violations == 0 && solved > 0,
                   os.str()};
  });

  report(5, "pairwise feasibility of every profile", [] {
    const auto& st = random_runs();
    std::ostringstream os;
    os << st.collision_violations << " colliding profiles, " << st.spec_violations << " specification violations in "
       << st.iterations << " iterations";
    return Outcome{st.collision_violations == 0 && st.spec_violations == 0, os.str()};
  });

  report(6, "intersection trends, 20 trials, K=500", [] {
    ExperimentConfig cfg;
    cfg.scenario = intersection_scenario();
    cfg.trials = 20;
    cfg.base_seed = 1000;
    cfg.options.iterations = 500;

    cfg.algorithm = Algorithm::Prioritized;
    const auto pri = run_experiment(cfg).table;
    cfg.algorithm = Algorithm::INash;
    const auto game = run_experiment(cfg).table;

    auto successes = [](const MetricsTable& t) {
      std::vector<double> v;
      for (const auto& m : t.robots) v.push_back(m.successes);
      return v;
    };
    auto range = [](const MetricsTable& t) -> std::optional<double> {
      std::vector<double> v;
      for (const auto& m : t.robots)
        if (m.mean_ratio) v.push_back(*m.mean_ratio);
      if (v.empty()) return std::nullopt;
      return *std::max_element(v.begin(), v.end()) - *std::min_element(v.begin(), v.end());
    };
    std::vector<double> ids;
    for (const auto& m : pri.robots) ids.push_back(m.id);
    const auto rho = spearman(ids, successes(pri));
    const auto pri_range = range(pri);
    const auto game_range = range(game);

    std::ostringstream os;
    auto list = [&](const MetricsTable& t) {
      for (std::size_t i = 0; i < t.robots.size(); ++i) os << (i ? "," : "") << t.robots[i].successes;
    };
    os << "prioritized successes ";
    list(pri);
    os << " (spearman " << (rho ? std::to_string(*rho) : "undefined") << "), inash successes ";
    list(game);
    os << "; ratio range prioritized " << (pri_range ? std::to_string(*pri_range) : "n/a") << " vs inash "
       << (game_range ? std::to_string(*game_range) : "n/a");
    const bool a = rho && *rho <= -0.5;
    const bool b = pri_range && game_range && *game_range <= *pri_range;
    return Outcome{a && b, os.str()};
  });

  report(7, "centralized total <= game total on shared graphs", [] {
    PlannerOptions o;
    o.iterations = 250;
    o.path_cap = 2'000'000;
    o.max_joint_tuples = 200'000'000;
    int trials = 0, ok = 0, capped = 0, compared = 0;
    for (int t = 0; t < 50; ++t) {
      o.seed = 300 + static_cast<std::uint64_t>(t);
      const RunRecord game = run_inash(crossing_fixture(), o);
      const JointSolution joint = optimal_trajectory(game.graphs, game.robots, game.workspace, o);
      ++trials;
      if (joint.cap_exceeded) {
        ++capped;
        continue;
      }
      CostVector game_total = CostVector::zeros(1);
      bool complete = true;
      for (const auto& p : game.final_profile.paths) {
        if (p) game_total += p->cost;
        else complete = false;
      }
      if (!complete) {
        ++ok;  // the game left a robot without a path: its total is TOP
        continue;
      }
      ++compared;
      if (joint.found && joint.total->scalar() <= game_total.scalar() + 1e-9) ++ok;
    }
    std::ostringstream os;
    os << ok << "/" << trials << " trials with centralized <= game (" << compared
       << " with both robots planned by the game, " << capped << " capped)";
    return Outcome{ok * 100 >= 95 * trials && capped == 0, os.str()};
  });

  report(8, "numerical cross-checks", [] {
    std::mt19937_64 rng(8888);
    std::uniform_real_distribution<double> rad(0.3, 0.7);
    int disagreements = 0, boundary = 0, collide = 0;
    for (int t = 0; t < 10000; ++t) {
      const TimedPath a = make_timed_path(1, rad(rng), testing::random_polyline(rng, 0, 6, 4), 1.0);
      const TimedPath b = make_timed_path(2, rad(rng), testing::random_polyline(rng, 0, 6, 4), 1.0);
      const double thr = a.radius + b.radius;
      const double sampled = testing::sampled_min_distance(a, b, 1e-3);
      const bool exact = collision_free_pair(a, b, 0.0);
      collide += !exact;
      if (exact != (sampled >= thr)) {
        if (std::abs(sampled - thr) <= 1e-6) ++boundary;
        else ++disagreements;
      }
    }
    const Automaton& aut = reach_avoid_automaton();
    int word_mismatches = 0;
    for (int t = 0; t < 10000; ++t) {
      Word w;
      const int n = 1 + static_cast<int>(rng() % 8);
      bool all_free = true, some_goal = false;
      for (int j = 0; j < n; ++j) {
        Label l = (rng() % 8 != 0) ? kFree : 0;
        if (rng() % 3 == 0) l |= kGoal;
        all_free = all_free && (l & kFree);
        some_goal = some_goal || (l & kGoal);
        w.labels.push_back(l);
        w.times.push_back(j);
      }
      if (aut.accepts(w) != (all_free && some_goal)) ++word_mismatches;
    }
    std::ostringstream os;
    os << "10000 path pairs (" << collide << " colliding): " << disagreements << " disagreements, " << boundary
       << " boundary cases; 10000 words: " << word_mismatches << " mismatches";
    return Outcome{disagreements == 0 && word_mismatches == 0, os.str()};
  });

  std::printf("%s: %d criteria failed\n", g_failures ? "FAIL" : "PASS", g_failures);
  return g_failures ? 1 : 0;
}
