#include "uavcharge/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "uavcharge/config_io.hpp"
#include "uavcharge/csv.hpp"
#include "uavcharge/experiment.hpp"
#include "uavcharge/presets.hpp"

namespace uavcharge::cli {

namespace fs = std::filesystem;

namespace {

struct Common {
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string scheme;  // empty: command default
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "first seed");
  cmd->add_option("--out", c.out_dir, "output directory");
  cmd->add_option("--scheme", c.scheme, "ours, optimal, static or all")
      ->check(CLI::IsMember({"ours", "optimal", "static", "all"}));
}

std::vector<sim::Scheme> schemes_of(const std::string& name,
                                    std::vector<sim::Scheme> fallback) {
  if (name.empty()) return fallback;
  if (name == "all")
    return {sim::Scheme::Ours, sim::Scheme::Optimal, sim::Scheme::Static};
  return {*sim::parse_scheme(name)};
}

fs::path out_dir(const Common& c) {
  fs::path dir = c.out_dir;
  if (dir.empty()) {
    const char* env = std::getenv("UAVCHARGE_OUT");
    dir = env && *env ? env : ".";
  }
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_csv(const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

ScenarioConfig checked(const ScenarioConfig& config) {
  if (const auto v = validate(config); !v.empty()) {
    std::string msg = "invalid config:";
    for (const auto& x : v) msg += "\n  " + to_string(x);
    throw ConfigError(msg);
  }
  return config;
}

std::size_t refused_runs(const sim::ExperimentTable& t) {
  std::size_t n = 0;
  for (const auto& r : t.runs) n += r.error.has_value();
  return n;
}

void print_aggregates(std::ostream& out, const sim::ExperimentTable& t) {
  for (const auto& a : t.aggregates) {
    out << sim::to_string(a.scheme) << " J=" << a.ugvs << " tau=" << fmt_num(a.tau)
        << " runs=" << a.runs;
    if (a.refused) out << " refused=" << a.refused;
    out << " SL=" << fmt_num(a.satisfaction.mean)
        << " uav_utility=" << fmt_num(a.uav_utility.mean)
        << " surplus=" << fmt_num(a.surplus.mean)
        << " non_envy=" << fmt_num(a.non_envy_ratio.mean) << '\n';
  }
}

void write_experiment(const fs::path& dir, const std::string& stem,
                      const sim::ExperimentSpec& spec,
                      const sim::ExperimentTable& table) {
  auto raw_csv = open_csv(dir / (stem + ".csv"));
  presets::write_provenance(raw_csv, spec.first_seed, spec.base);
  sim::write_metrics_csv(raw_csv, table);
  auto agg_csv = open_csv(dir / (stem + "_aggregate.csv"));
  presets::write_provenance(agg_csv, spec.first_seed, spec.base);
  sim::write_aggregate_csv(agg_csv, table);
}

void write_audits(const fs::path& path, std::uint64_t seed,
                  const ScenarioConfig& config,
                  const std::vector<audit::AuditReport>& reports) {
  auto f = open_csv(path);
  presets::write_provenance(f, seed, config);
  audit::write_audit_header(f);
  for (const auto& r : reports) audit::write_audit_row(f, r);
}

void summarize_audits(std::ostream& out,
                      const std::vector<audit::AuditReport>& reports) {
  std::size_t ir = 0, ic = 0, blocking = 0;
  double worst = 0, min_envy = 1;
  for (const auto& r : reports) {
    ir += r.ir_violations;
    ic += r.ic_violations;
    blocking += r.blocking_pairs;
    worst = std::max(worst, r.worst_gain);
    min_envy = std::min(min_envy, r.non_envy_ratio);
  }
  out << "instances=" << reports.size() << " ir_violations=" << ir
      << " ic_violations=" << ic << " worst_gain=" << fmt_num(worst)
      << " min_non_envy_ratio=" << fmt_num(min_envy)
      << " blocking_pairs=" << blocking << '\n';
}

int audit_command(const Common& c, std::size_t instances, std::size_t max_size,
                  const std::string& stem, std::ostream& out) {
  const ScenarioConfig config;
  const std::uint64_t seed = c.seed.value_or(1);
  const auto corpus = presets::audit_corpus(config, seed, instances, max_size);
  const auto reports = audit::audit_all(corpus);
  write_audits(out_dir(c) / (stem + ".csv"), seed, config, reports);
  summarize_audits(out, reports);
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Windowed UAV recharging auctions: simulation, presets and audits"};
  app.require_subcommand(1);

  Common common;

  auto* run = app.add_subcommand("run", "simulate a free-form config");
  add_common(run, common);
  std::string config_path;
  std::uint32_t replications = 1;
  std::vector<std::uint32_t> ugv_counts;
  std::vector<double> taus;
  bool with_audit = false;
  bool with_outcomes = false;
  run->add_option("--config", config_path, "key = value config file")
      ->check(CLI::ExistingFile);
  run->add_option("--replications", replications, "seeds per cell")
      ->check(CLI::PositiveNumber);
  run->add_option("--ugvs", ugv_counts, "UGV counts to sweep")->delimiter(',');
  run->add_option("--tau", taus, "window lengths to sweep (s)")->delimiter(',');
  run->add_flag("--audit", with_audit, "attach an audit to every window");
  run->add_flag("--outcomes", with_outcomes,
                "write per-window outcomes of the first seed");

  auto* preset = app.add_subcommand("preset", "reproduce a figure or table");
  add_common(preset, common);
  std::string preset_name;
  std::optional<std::uint32_t> preset_reps;
  preset->add_option("name", preset_name, "preset name")
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>(presets::names().begin(),
                                                     presets::names().end())));
  preset->add_option("--replications", preset_reps, "seeds (default 100)")
      ->check(CLI::PositiveNumber);

  auto* audit_cmd = app.add_subcommand("audit", "property audit over random markets");
  add_common(audit_cmd, common);
  std::size_t instances = 1000;
  std::size_t max_size = 8;
  audit_cmd->add_option("--instances", instances, "number of markets")
      ->check(CLI::PositiveNumber);
  audit_cmd->add_option("--max-size", max_size, "largest I and J")
      ->check(CLI::Range(1, 64));

  auto* validate_cmd = app.add_subcommand("validate", "check a config file");
  add_common(validate_cmd, common);
  std::string validate_path;
  validate_cmd->add_option("config", validate_path, "config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate_cmd) {
      const ScenarioConfig config = load_config(validate_path);
      const auto v = validate(config);
      for (const auto& x : v) err << to_string(x) << '\n';
      if (!v.empty()) return kConfigInvalid;
      out << "ok config_hash=" << hex64(config_hash(config)) << '\n';
      return kOk;
    }

    if (*audit_cmd) return audit_command(common, instances, max_size, "audit", out);

    if (*run) {
      sim::ExperimentSpec spec;
      spec.base = checked(config_path.empty() ? ScenarioConfig{}
                                              : load_config(config_path));
      spec.first_seed = common.seed.value_or(spec.base.seed);
      spec.replications = replications;
      spec.grid.ugv_counts = ugv_counts;
      spec.grid.window_lengths = taus;
      spec.schemes = schemes_of(common.scheme, {sim::Scheme::Ours});
      spec.audit = with_audit;
      const auto table = sim::run_experiment(spec);
      const fs::path dir = out_dir(common);
      write_experiment(dir, "metrics", spec, table);
      if (with_audit) {
        std::vector<audit::AuditReport> reports;
        for (const auto& r : table.runs)
          reports.insert(reports.end(), r.audits.begin(), r.audits.end());
        write_audits(dir / "audit.csv", spec.first_seed, spec.base, reports);
        summarize_audits(out, reports);
      }
      if (with_outcomes) {
        auto f = open_csv(dir / "outcomes.csv");
        presets::write_provenance(f, spec.first_seed, spec.base);
        mechanism::write_outcome_header(f, true);
        for (const auto& cell : sim::expand_grid(spec.base, spec.grid))
          for (sim::Scheme s : spec.schemes) {
            sim::SimOptions options;
            options.scheme = s;
            options.keep_markets = true;
            sim::World w = sim::generate_scenario(cell, spec.first_seed, options);
            try {
              sim::run(w);
            } catch (const baselines::CapacityError&) {
              continue;
            }
            for (const auto& rec : w.completed)
              mechanism::write_outcome_rows(f, rec.market, rec.outcome,
                                            sim::to_string(s));
          }
      }
      print_aggregates(out, table);
      if (const std::size_t n = refused_runs(table)) {
        err << n << " run(s) refused by the exhaustive size guard\n";
        return kGuard;
      }
      return kOk;
    }

    // preset
    const std::uint64_t seed = common.seed.value_or(1);
    if (auto spec = presets::sweep(preset_name, seed, preset_reps)) {
      if (!common.scheme.empty()) spec->schemes = schemes_of(common.scheme, {});
      const auto table = sim::run_experiment(*spec);
      write_experiment(out_dir(common), preset_name, *spec, table);
      print_aggregates(out, table);
      return kOk;
    }
    const ScenarioConfig config;
    const std::uint32_t reps = preset_reps.value_or(100);
    if (preset_name == "table-truthful") {
      const auto rows = presets::table_truthful(config, seed, reps);
      auto f = open_csv(out_dir(common) / "table-truthful.csv");
      presets::write_provenance(f, seed, config);
      presets::write_truthful_csv(f, rows);
      std::size_t truthful_wins = 0;
      for (const auto& r : rows)
        truthful_wins += r.truthful_utility >= r.untruthful_utility - audit::kTolerance;
      out << "instances=" << rows.size()
          << " truthful_at_least_untruthful=" << truthful_wins << '\n';
      return kOk;
    }
    if (preset_name == "table-envy") {
      const auto schemes =
          schemes_of(common.scheme, {sim::Scheme::Ours, sim::Scheme::Optimal});
      const auto rows = presets::table_envy(config, seed, reps, schemes);
      auto f = open_csv(out_dir(common) / "table-envy.csv");
      presets::write_provenance(f, seed, config);
      presets::write_envy_csv(f, rows);
      for (sim::Scheme s : schemes)
        for (std::size_t size : {5, 20}) {
          double sum = 0;
          std::size_t n = 0, refused = 0;
          for (const auto& r : rows) {
            if (r.scheme != s || r.size != size) continue;
            if (r.refused) {
              ++refused;
              continue;
            }
            sum += r.all_participants;
            ++n;
          }
          out << sim::to_string(s) << ' ' << size << 'x' << size;
          if (n) out << " mean_non_envy_ratio=" << fmt_num(sum / static_cast<double>(n));
          if (refused) out << " refused=" << refused;
          out << '\n';
        }
      return kOk;
    }
    return audit_command(common, 1000, 8, "audit-suite", out);
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return kConfigInvalid;
  } catch (const baselines::CapacityError& e) {
    err << e.what() << '\n';
    return kGuard;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace uavcharge::cli
