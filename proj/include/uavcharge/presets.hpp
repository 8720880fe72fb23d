#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "uavcharge/audit.hpp"
#include "uavcharge/experiment.hpp"

namespace uavcharge::presets {

inline constexpr std::string_view kVersion = "0.1.0";

/// Names accepted by `uavcharge preset`.
const std::vector<std::string_view>& names();

/// Sweep presets (fig-*): the experiment they run, or nullopt for a name
/// that is not a sweep. `replications` overrides the 100-seed default.
std::optional<sim::ExperimentSpec> sweep(std::string_view name,
                                         std::uint64_t first_seed,
                                         std::optional<std::uint32_t> replications);

/// Truthful versus best untruthful utility of one randomly chosen UAV.
struct TruthfulRow {
  std::size_t size = 0;  // I = J
  std::uint64_t seed = 0;
  std::uint32_t uav = 0;
  double truthful_utility = 0;
  double untruthful_utility = 0;
  double untruthful_bid = 0;
};

std::vector<TruthfulRow> table_truthful(const ScenarioConfig& config,
                                        std::uint64_t first_seed,
                                        std::uint32_t replications);

/// Non-envy ratios of one scheme on one random market; refused markets
/// carry the guard message instead of ratios.
struct EnvyRow {
  sim::Scheme scheme = sim::Scheme::Ours;
  std::size_t size = 0;
  std::uint64_t seed = 0;
  double all_participants = 0;
  double winners_only = 0;
  std::optional<std::string> refused;
};

std::vector<EnvyRow> table_envy(const ScenarioConfig& config,
                                std::uint64_t first_seed,
                                std::uint32_t replications,
                                const std::vector<sim::Scheme>& schemes);

/// Random markets with I, J drawn from [1, max_size]; every third market
/// uses coarse values so that tied bids and tied QoRS are exercised.
std::vector<mechanism::WindowMarket> audit_corpus(const ScenarioConfig& config,
                                                  std::uint64_t first_seed,
                                                  std::size_t instances,
                                                  std::size_t max_size);

/// `# uavcharge <version> seed=<seed> config_hash=<hex>`.
void write_provenance(std::ostream& out, std::uint64_t seed,
                      const ScenarioConfig& config);

void write_truthful_csv(std::ostream& out, const std::vector<TruthfulRow>& rows);
void write_envy_csv(std::ostream& out, const std::vector<EnvyRow>& rows);

}  // namespace uavcharge::presets
