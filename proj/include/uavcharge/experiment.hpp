#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "uavcharge/simulator.hpp"
#include "uavcharge/types.hpp"

namespace uavcharge::sim {

/// Cartesian sweep over UGV count and window length. An empty axis keeps
/// the base config's value.
struct ExperimentGrid {
  std::vector<std::uint32_t> ugv_counts;
  std::vector<double> window_lengths;
};

struct ExperimentSpec {
  ScenarioConfig base;
  ExperimentGrid grid;
  std::uint64_t first_seed = 1;
  std::uint32_t replications = 1;
  std::vector<Scheme> schemes{Scheme::Ours};
  std::size_t max_exhaustive_pairs = baselines::kDefaultMaxPairs;
  bool audit = false;
};

/// One simulated horizon. `error` holds the guard message of a refused cell.
struct RunResult {
  Scheme scheme = Scheme::Ours;
  std::uint32_t ugvs = 0;
  double tau = 0;
  std::uint64_t seed = 0;
  std::vector<MetricsRow> rows;
  std::vector<audit::AuditReport> audits;
  std::optional<std::string> error;
};

struct Stat {
  double mean = 0;
  double sd = 0;  // sample standard deviation, 0 for a single run
};

/// One (scheme, J, tau) cell. Each run contributes the mean of its window
/// rows, empty windows included; statistics are taken across seeds.
struct AggregateRow {
  Scheme scheme = Scheme::Ours;
  std::uint32_t ugvs = 0;
  double tau = 0;
  std::uint32_t runs = 0;
  std::uint32_t refused = 0;
  Stat satisfaction;
  Stat uav_utility;
  Stat ugv_utility;
  Stat surplus;
  Stat non_envy_ratio;
  Stat winners;
};

struct ExperimentTable {
  std::vector<RunResult> runs;  // cell-major, then seed, then scheme
  std::vector<AggregateRow> aggregates;
};

/// Configs of every grid cell, in table order.
std::vector<ScenarioConfig> expand_grid(const ScenarioConfig& base,
                                        const ExperimentGrid& grid);

/// Runs every cell x seed x scheme across OpenMP threads. Results are
/// placed by index, so the table does not depend on thread scheduling.
ExperimentTable run_experiment(const ExperimentSpec& spec);

/// Single-threaded reference; produces the same table as run_experiment.
ExperimentTable run_experiment_serial(const ExperimentSpec& spec);

std::vector<AggregateRow> aggregate(const std::vector<RunResult>& runs);

/// Per-window means of a run; `winners` holds the run total.
MetricsRow run_mean(const RunResult& run);

void write_metrics_csv(std::ostream& out, const ExperimentTable& table);
void write_aggregate_csv(std::ostream& out, const ExperimentTable& table);

}  // namespace uavcharge::sim
