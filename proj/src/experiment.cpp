#include "experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "baselines.hpp"
#include "reference.hpp"

namespace inash {

TrialResult score_trial(const RunRecord& run, const std::vector<std::optional<double>>& references)
{
  TrialResult t;
  t.seed = run.seed;
  t.iterations = run.trace.size();
  for (const auto& r : run.trace) {
    t.theta_total += r.theta;
    t.vartheta_total += r.vartheta;
  }
  t.cap_hit = !run.trace.empty() && run.trace.back().cap_hit;
  for (std::size_t i = 0; i < run.robots.size(); ++i) {
    RobotTrial rt;
    rt.id = run.robots[i].id;
    rt.reference = i < references.size() ? references[i] : std::nullopt;
    const auto& p = run.final_profile.paths[i];
    if (p && accepts(reach_avoid_automaton(), word_of_path(p->path, run.robots[i], run.workspace))) {
      rt.reached = true;
      rt.length = p->cost[0];
      if (rt.reference && *rt.reference > 0.0) rt.ratio = *rt.length / *rt.reference;
    }
    t.robots.push_back(rt);
  }
  return t;
}

MetricsTable aggregate(const std::string& algorithm, const std::vector<TrialResult>& trials)
{
  MetricsTable m;
  m.algorithm = algorithm;
  m.trials = static_cast<int>(trials.size());
  std::size_t n = 0;
  for (const auto& t : trials) n = std::max(n, t.robots.size());
  std::vector<double> ratio_sum(n, 0.0), length_sum(n, 0.0);
  std::vector<int> ratio_count(n, 0);
  m.robots.resize(n);
  double theta = 0.0, vartheta = 0.0, iterations = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    m.robots[i].id = static_cast<int>(i) + 1;
    m.robots[i].trials = m.trials;
  }
  for (const auto& t : trials) {
    if (!t.error.empty()) {
      ++m.failed_trials;
      continue;
    }
    theta += static_cast<double>(t.theta_total);
    vartheta += static_cast<double>(t.vartheta_total);
    iterations += static_cast<double>(t.iterations);
    for (std::size_t i = 0; i < t.robots.size(); ++i) {
      const auto& r = t.robots[i];
      if (!r.reached) continue;
      ++m.robots[i].successes;
      length_sum[i] += *r.length;
      if (r.ratio) {
        ratio_sum[i] += *r.ratio;
        ++ratio_count[i];
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (m.robots[i].successes > 0) m.robots[i].mean_length = length_sum[i] / m.robots[i].successes;
    if (ratio_count[i] > 0) m.robots[i].mean_ratio = ratio_sum[i] / ratio_count[i];
  }
  if (iterations > 0.0) {
    m.mean_theta_per_iteration = theta / iterations;
    m.mean_vartheta_per_iteration = vartheta / iterations;
  }
  return m;
}

namespace {

std::vector<std::optional<double>> references_for(const Workspace& w, const std::vector<RobotSpec>& robots)
{
  std::vector<std::optional<double>> refs;
  for (const auto& r : robots) refs.push_back(reference_optimum(w, r));
  return refs;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg)
{
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  ExperimentResult out;
  std::vector<std::optional<double>> fixed_refs;
  bool fixed_refs_ready = false;
  for (int t = 0; t < cfg.trials; ++t) {
    const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(t);
    TrialResult trial;
    try {
      const Scenario s =
          cfg.source == ScenarioSource::Fixed ? cfg.scenario : generate_random_scenario(cfg.random, seed);
      PlannerOptions o = cfg.options;
      o.seed = seed;
      RunRecord run = run_algorithm(cfg.algorithm, s, o);
      std::vector<std::optional<double>> refs;
      if (cfg.source == ScenarioSource::Fixed) {
        if (!fixed_refs_ready) {
          fixed_refs = references_for(run.workspace, run.robots);
          fixed_refs_ready = true;
        }
        refs = fixed_refs;
      } else {
        refs = references_for(run.workspace, run.robots);
      }
      trial = score_trial(run, refs);
      if (cfg.keep_runs) out.runs.push_back(std::move(run));
    } catch (const std::exception& e) {
      trial.error = e.what();
    }
    trial.index = t;
    trial.seed = seed;
    out.trials.push_back(std::move(trial));
  }
  out.table = aggregate(algorithm_name(cfg.algorithm), out.trials);
  return out;
}

std::string metrics_csv(const MetricsTable& t)
{
  auto fmt = [](const std::optional<double>& v) {
    if (!v) return std::string();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", *v);
    return std::string(buf);
  };
  std::ostringstream os;
  os << "algorithm,robot,successes,trials,mean_ratio,mean_length\n";
  for (const auto& r : t.robots)
    os << t.algorithm << ',' << r.id << ',' << r.successes << ',' << r.trials << ',' << fmt(r.mean_ratio) << ','
       << fmt(r.mean_length) << '\n';
  return os.str();
}

json metrics_to_json(const MetricsTable& t)
{
  json robots = json::array();
  for (const auto& r : t.robots)
    robots.push_back({{"id", r.id},
                      {"successes", r.successes},
                      {"trials", r.trials},
                      {"mean_ratio", r.mean_ratio ? json(*r.mean_ratio) : json(nullptr)},
                      {"mean_length", r.mean_length ? json(*r.mean_length) : json(nullptr)}});
  return {{"algorithm", t.algorithm},
          {"trials", t.trials},
          {"failed_trials", t.failed_trials},
          {"robots", robots},
          {"mean_theta_per_iteration", t.mean_theta_per_iteration},
          {"mean_vartheta_per_iteration", t.mean_vartheta_per_iteration}};
}

json trials_to_json(const std::vector<TrialResult>& trials)
{
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json out = json::array();
  for (const auto& t : trials) {
    json robots = json::array();
    for (const auto& r : t.robots)
      robots.push_back({{"id", r.id},
                        {"reached", r.reached},
                        {"length", opt(r.length)},
                        {"reference", opt(r.reference)},
                        {"ratio", opt(r.ratio)}});
    json j = {{"index", t.index},
              {"seed", t.seed},
              {"robots", robots},
              {"iterations", t.iterations},
              {"theta_total", t.theta_total},
              {"vartheta_total", t.vartheta_total},
              {"cap_hit", t.cap_hit}};
    if (!t.error.empty()) j["error"] = t.error;
    out.push_back(std::move(j));
  }
  return out;
}

json experiment_to_json(const ExperimentResult& r)
{
  return {{"table", metrics_to_json(r.table)}, {"trials", trials_to_json(r.trials)}};
}

std::optional<double> spearman(const std::vector<double>& a, const std::vector<double>& b)
{
  if (a.size() != b.size()) throw std::invalid_argument("spearman: size mismatch");
  const std::size_t n = a.size();
  if (n < 2) return std::nullopt;
  auto ranks = [n](const std::vector<double>& v) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return v[x] < v[y]; });
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n;) {
      std::size_t j = i;
      while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
      const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const auto ra = ranks(a);
  const auto rb = ranks(b);
  const double mean = 0.5 * static_cast<double>(n + 1);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sab += (ra[i] - mean) * (rb[i] - mean);
    saa += (ra[i] - mean) * (ra[i] - mean);
    sbb += (rb[i] - mean) * (rb[i] - mean);
  }
  if (saa == 0.0 || sbb == 0.0) return std::nullopt;
  return sab / std::sqrt(saa * sbb);
}

} // namespace inash
