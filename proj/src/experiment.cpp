#include "uavcharge/experiment.hpp"

#include <cmath>
#include <cstddef>
#include <map>
#include <tuple>

#include "uavcharge/csv.hpp"

namespace uavcharge::sim {

namespace {

struct Job {
  std::size_t cell = 0;
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::Ours;
};

std::vector<Job> jobs_of(const ExperimentSpec& spec, std::size_t cells) {
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < cells; ++c)
    for (std::uint32_t r = 0; r < spec.replications; ++r)
      for (Scheme s : spec.schemes) jobs.push_back({c, spec.first_seed + r, s});
  return jobs;
}

RunResult run_job(const ExperimentSpec& spec, const ScenarioConfig& config,
                  const Job& job) {
  RunResult r;
  r.scheme = job.scheme;
  r.ugvs = config.ugv_count;
  r.tau = config.window_length;
  r.seed = job.seed;
  SimOptions options;
  options.scheme = job.scheme;
  options.max_exhaustive_pairs = spec.max_exhaustive_pairs;
  options.audit = spec.audit;
  try {
    World w = generate_scenario(config, job.seed, options);
    run(w);
    for (auto& rec : w.completed) {
      r.rows.push_back(std::move(rec.metrics));
      if (rec.audit) r.audits.push_back(std::move(*rec.audit));
    }
  } catch (const baselines::CapacityError& e) {
    r.rows.clear();
    r.audits.clear();
    r.error = e.what();
  }
  return r;
}

Stat stat_of(const std::vector<double>& xs) {
  Stat s;
  if (xs.empty()) return s;
  double sum = 0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

}  // namespace

std::vector<ScenarioConfig> expand_grid(const ScenarioConfig& base,
                                        const ExperimentGrid& grid) {
  std::vector<double> taus = grid.window_lengths;
  if (taus.empty()) taus.push_back(base.window_length);
  std::vector<std::uint32_t> js = grid.ugv_counts;
  if (js.empty()) js.push_back(base.ugv_count);
  std::vector<ScenarioConfig> cells;
  for (double tau : taus)
    for (std::uint32_t j : js) {
      ScenarioConfig c = base;
      c.window_length = tau;
      c.ugv_count = j;
      cells.push_back(c);
    }
  return cells;
}

ExperimentTable run_experiment(const ExperimentSpec& spec) {
  const auto cells = expand_grid(spec.base, spec.grid);
  for (const auto& c : cells)
    if (const auto v = validate(c); !v.empty())
      throw std::invalid_argument("invalid config: " + to_string(v.front()));
  const auto jobs = jobs_of(spec, cells.size());
  ExperimentTable t;
  t.runs.resize(jobs.size());
  const auto n = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < n; ++k)
    t.runs[k] = run_job(spec, cells[jobs[k].cell], jobs[k]);
  t.aggregates = aggregate(t.runs);
  return t;
}

ExperimentTable run_experiment_serial(const ExperimentSpec& spec) {
  const auto cells = expand_grid(spec.base, spec.grid);
  for (const auto& c : cells)
    if (const auto v = validate(c); !v.empty())
      throw std::invalid_argument("invalid config: " + to_string(v.front()));
  ExperimentTable t;
  for (const Job& job : jobs_of(spec, cells.size()))
    t.runs.push_back(run_job(spec, cells[job.cell], job));
  t.aggregates = aggregate(t.runs);
  return t;
}

MetricsRow run_mean(const RunResult& run) {
  MetricsRow m;
  m.scheme = std::string(to_string(run.scheme));
  m.ugvs = run.ugvs;
  m.tau = run.tau;
  m.seed = run.seed;
  m.non_envy_ratio = 0;
  if (run.rows.empty()) return m;
  double winners = 0;
  for (const auto& r : run.rows) {
    m.satisfaction += r.satisfaction;
    m.uav_utility += r.uav_utility;
    m.ugv_utility += r.ugv_utility;
    m.surplus += r.surplus;
    m.non_envy_ratio += r.non_envy_ratio;
    winners += r.winners;
  }
  const double n = static_cast<double>(run.rows.size());
  m.satisfaction /= n;
  m.uav_utility /= n;
  m.ugv_utility /= n;
  m.surplus /= n;
  m.non_envy_ratio /= n;
  m.winners = static_cast<std::uint32_t>(std::lround(winners));
  return m;
}

std::vector<AggregateRow> aggregate(const std::vector<RunResult>& runs) {
  using Key = std::tuple<std::uint32_t, double, int>;
  struct Acc {
    std::vector<double> sl, uav, ugv, surplus, envy, winners;
    std::uint32_t refused = 0;
  };
  // Keys in first-seen order so output follows the job order.
  std::vector<Key> order;
  std::map<Key, Acc> acc;
  for (const auto& r : runs) {
    const Key key{r.ugvs, r.tau, static_cast<int>(r.scheme)};
    auto [it, fresh] = acc.try_emplace(key);
    if (fresh) order.push_back(key);
    if (r.error) {
      ++it->second.refused;
      continue;
    }
    const MetricsRow m = run_mean(r);
    const double n = r.rows.empty() ? 1.0 : static_cast<double>(r.rows.size());
    it->second.sl.push_back(m.satisfaction);
    it->second.uav.push_back(m.uav_utility);
    it->second.ugv.push_back(m.ugv_utility);
    it->second.surplus.push_back(m.surplus);
    it->second.envy.push_back(m.non_envy_ratio);
    it->second.winners.push_back(static_cast<double>(m.winners) / n);
  }
  std::vector<AggregateRow> out;
  for (const Key& key : order) {
    const Acc& a = acc.at(key);
    AggregateRow row;
    row.ugvs = std::get<0>(key);
    row.tau = std::get<1>(key);
    row.scheme = static_cast<Scheme>(std::get<2>(key));
    row.runs = static_cast<std::uint32_t>(a.sl.size());
    row.refused = a.refused;
    row.satisfaction = stat_of(a.sl);
    row.uav_utility = stat_of(a.uav);
    row.ugv_utility = stat_of(a.ugv);
    row.surplus = stat_of(a.surplus);
    row.non_envy_ratio = stat_of(a.envy);
    row.winners = stat_of(a.winners);
    out.push_back(row);
  }
  return out;
}

void write_metrics_csv(std::ostream& out, const ExperimentTable& table) {
  write_metrics_header(out);
  for (const auto& run : table.runs)
    for (const auto& row : run.rows) write_metrics_row(out, row);
}

void write_aggregate_csv(std::ostream& out, const ExperimentTable& table) {
  out << "scheme,J,tau,runs,refused,SL_mean,SL_sd,uav_utility_mean,"
         "uav_utility_sd,ugv_utility_mean,ugv_utility_sd,surplus_mean,"
         "surplus_sd,non_envy_ratio_mean,non_envy_ratio_sd,winners_mean,"
         "winners_sd\n";
  for (const auto& a : table.aggregates) {
    out << to_string(a.scheme) << ',' << a.ugvs << ',' << fmt_num(a.tau) << ','
        << a.runs << ',' << a.refused;
    for (const Stat* s : {&a.satisfaction, &a.uav_utility, &a.ugv_utility,
                          &a.surplus, &a.non_envy_ratio, &a.winners})
      out << ',' << fmt_num(s->mean) << ',' << fmt_num(s->sd);
    out << '\n';
  }
}

}  // namespace uavcharge::sim
