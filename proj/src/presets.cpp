#include "uavcharge/presets.hpp"

#include <random>

#include "uavcharge/config_io.hpp"
#include "uavcharge/csv.hpp"

namespace uavcharge::presets {

namespace {

constexpr std::uint32_t kDefaultReplications = 100;

// Participation threshold 0 puts the whole fleet of 10 in the first
// window, so I(tau) = 10 on every sweep.
ScenarioConfig figure_base() {
  ScenarioConfig c;
  c.uav_count = 10;
  c.participation_threshold = 0.0;
  return c;
}

}  // namespace

const std::vector<std::string_view>& names() {
  static const std::vector<std::string_view> all{
      "fig-satisfaction", "fig-utility",  "fig-surplus", "fig-window",
      "table-truthful",   "table-envy",   "audit-suite"};
  return all;
}

std::optional<sim::ExperimentSpec> sweep(std::string_view name,
                                         std::uint64_t first_seed,
                                         std::optional<std::uint32_t> replications) {
  sim::ExperimentSpec spec;
  spec.base = figure_base();
  spec.first_seed = first_seed;
  spec.replications = replications.value_or(kDefaultReplications);
  if (name == "fig-satisfaction" || name == "fig-utility" || name == "fig-surplus") {
    spec.grid.ugv_counts = {6, 8, 10, 12, 14};
    spec.grid.window_lengths = {8};
    spec.schemes = {sim::Scheme::Ours, sim::Scheme::Optimal, sim::Scheme::Static};
    return spec;
  }
  if (name == "fig-window") {
    spec.grid.ugv_counts = {6, 10, 14};
    spec.grid.window_lengths = {4, 8, 16};
    spec.schemes = {sim::Scheme::Ours};
    return spec;
  }
  return std::nullopt;
}

std::vector<TruthfulRow> table_truthful(const ScenarioConfig& config,
                                        std::uint64_t first_seed,
                                        std::uint32_t replications) {
  std::vector<TruthfulRow> rows;
  for (std::size_t size : {5, 20}) {
    for (std::uint32_t r = 0; r < replications; ++r) {
      const std::uint64_t seed = first_seed + r;
      const auto market = sim::random_market(config, seed, size, size);
      std::mt19937_64 pick(seed);
      const std::size_t uav =
          std::uniform_int_distribution<std::size_t>(0, size - 1)(pick);
      const auto grid = audit::deviation_grid(market, uav);
      const auto probe = audit::deviation_probe(market, uav, grid);
      rows.push_back({size, seed, raw(market.demand[uav].uav),
                      probe.truthful_utility, probe.best_untruthful_utility,
                      probe.best_untruthful_bid});
    }
  }
  return rows;
}

std::vector<EnvyRow> table_envy(const ScenarioConfig& config,
                                std::uint64_t first_seed,
                                std::uint32_t replications,
                                const std::vector<sim::Scheme>& schemes) {
  std::vector<EnvyRow> rows;
  for (std::size_t size : {5, 20}) {
    for (std::uint32_t r = 0; r < replications; ++r) {
      const std::uint64_t seed = first_seed + r;
      const auto market = sim::random_market(config, seed, size, size);
      for (sim::Scheme scheme : schemes) {
        EnvyRow row{scheme, size, seed, 0, 0, std::nullopt};
        try {
          const AuctionOutcome outcome =
              scheme == sim::Scheme::Optimal
                  ? baselines::exhaustive_optimal(market)
                  : mechanism::run_auction(market);
          const auto envy = audit::non_envy_ratio(market, outcome);
          row.all_participants = envy.all_participants;
          row.winners_only = envy.winners_only;
        } catch (const baselines::CapacityError& e) {
          row.refused = e.what();
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::vector<mechanism::WindowMarket> audit_corpus(const ScenarioConfig& config,
                                                  std::uint64_t first_seed,
                                                  std::size_t instances,
                                                  std::size_t max_size) {
  std::mt19937_64 sizes(first_seed);
  std::uniform_int_distribution<std::size_t> size(1, max_size);
  std::vector<mechanism::WindowMarket> corpus;
  corpus.reserve(instances);
  for (std::size_t k = 0; k < instances; ++k) {
    const std::size_t i = size(sizes);
    const std::size_t j = size(sizes);
    corpus.push_back(sim::random_market(config, first_seed + k, i, j, k % 3 == 2));
  }
  return corpus;
}

void write_provenance(std::ostream& out, std::uint64_t seed,
                      const ScenarioConfig& config) {
  out << "# uavcharge " << kVersion << " seed=" << seed
      << " config_hash=" << hex64(config_hash(config)) << '\n';
}

void write_truthful_csv(std::ostream& out, const std::vector<TruthfulRow>& rows) {
  out << "I,J,seed,uav_id,truthful_utility,untruthful_utility,untruthful_bid\n";
  for (const auto& r : rows)
    out << r.size << ',' << r.size << ',' << r.seed << ',' << r.uav << ','
        << fmt_num(r.truthful_utility) << ',' << fmt_num(r.untruthful_utility)
        << ',' << fmt_num(r.untruthful_bid) << '\n';
}

void write_envy_csv(std::ostream& out, const std::vector<EnvyRow>& rows) {
  out << "scheme,I,J,seed,non_envy_ratio,non_envy_winners,status\n";
  for (const auto& r : rows) {
    out << sim::to_string(r.scheme) << ',' << r.size << ',' << r.size << ','
        << r.seed << ',';
    if (r.refused)
      out << ",,refused";
    else
      out << fmt_num(r.all_participants) << ',' << fmt_num(r.winners_only) << ",ok";
    out << '\n';
  }
}

}  // namespace uavcharge::presets
