// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "uavcharge/audit.hpp"
#include "uavcharge/cli.hpp"
#include "uavcharge/energy.hpp"
#include "uavcharge/experiment.hpp"
#include "uavcharge/mechanism.hpp"
#include "uavcharge/presets.hpp"
#include "uavcharge/simulator.hpp"

namespace {

using namespace uavcharge;
namespace fs = std::filesystem;

constexpr double kUtilityTol = 1e-9;
constexpr double kPaymentTol = 1e-12;
constexpr double kEnergyTol = 1e-12;
constexpr double kTrendTol = 1e-12;
constexpr std::uint32_t kSeeds = 100;

constexpr double kIcBudgetSeconds = 30;
constexpr double kOracleBudgetSeconds = 60;
constexpr double kSweepBudgetSeconds = 300;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Criteria 1, 2 and 4 share one corpus of truthful markets with I, J <= 8.
const std::vector<mechanism::WindowMarket>& corpus() {
  static const auto c = presets::audit_corpus(ScenarioConfig{}, 1, 1000, 8);
  return c;
}

struct CorpusAudit {
  std::vector<audit::AuditReport> reports;
  double seconds = 0;
};

const CorpusAudit& corpus_audit() {
  static const CorpusAudit a = [] {
    const auto t0 = std::chrono::steady_clock::now();
    CorpusAudit r;
    r.reports = audit::audit_all(corpus());
    r.seconds = seconds_since(t0);
    return r;
  }();
  return a;
}

Verdict incentive_compatibility() {
  const auto& a = corpus_audit();
  double worst = 0;
  std::size_t flagged = 0;
  for (const auto& r : a.reports) {
    worst = std::max(worst, r.worst_gain);
    flagged += r.ic_violations;
  }
  std::ostringstream d;
  d << a.reports.size() << " markets, max gain " << worst << ", " << a.seconds << " s";
  return {a.reports.size() >= 1000 && worst <= kUtilityTol && flagged == 0 &&
              a.seconds < kIcBudgetSeconds,
          d.str()};
}

Verdict individual_rationality() {
  std::size_t violations = 0;
  for (const auto& r : corpus_audit().reports) violations += r.ir_violations;
  return {violations == 0, std::to_string(violations) + " negative utilities"};
}

Verdict envy_freeness() {
  const auto rows = presets::table_envy(ScenarioConfig{}, 1, kSeeds, {sim::Scheme::Ours});
  std::size_t at5 = 0, at20 = 0, bad = 0;
  for (const auto& r : rows) {
    if (r.size == 5) ++at5;
    if (r.size == 20) ++at20;
    if (r.refused || r.all_participants != 1.0 || r.winners_only != 1.0) ++bad;
  }
  std::ostringstream d;
  d << at5 << " runs at 5x5, " << at20 << " at 20x20, " << bad << " below 1.0";
  return {at5 >= kSeeds && at20 >= kSeeds && bad == 0, d.str()};
}

Verdict stability() {
  std::size_t blocking = 0;
  for (const auto& r : corpus_audit().reports) blocking += r.blocking_pairs;
  return {blocking == 0, std::to_string(blocking) + " blocking pairs"};
}

std::vector<double> valuations(const mechanism::WindowMarket& m) {
  std::vector<double> v;
  for (const auto& d : m.demand) v.push_back(d.valuation);
  return v;
}

std::vector<double> qors_of(const mechanism::WindowMarket& m) {
  std::vector<double> q;
  for (const auto& s : m.supply) q.push_back(s.qors);
  return q;
}

// Sizes in [1, 8] with min(I, J) <= 7 so the enumeration stays within 8!.
std::vector<mechanism::WindowMarket> oracle_corpus(std::size_t n) {
  std::mt19937_64 rng(20260501);
  std::uniform_int_distribution<std::size_t> size(1, 8);
  std::vector<mechanism::WindowMarket> out;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t i = size(rng), j = size(rng);
    if (i == 8 && j == 8) j = 7;
    out.push_back(sim::random_market(ScenarioConfig{}, 5000 + k, i, j, k % 4 == 0));
  }
  return out;
}

Verdict allocation_optimality() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto markets = oracle_corpus(500);
  double worst = 0;
  for (const auto& m : markets) {
    const double ours = mechanism::run_auction(m).social_surplus;
    worst = std::max(worst, std::abs(ours - testing::brute_force_surplus(valuations(m), qors_of(m))));
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << markets.size() << " markets, max |surplus - oracle| " << worst << ", " << secs << " s";
  return {worst <= kUtilityTol && secs < kOracleBudgetSeconds, d.str()};
}

double max_gap(const mechanism::PaymentSchedule& a, const mechanism::PaymentSchedule& b) {
  if (a.by_rank.size() != b.by_rank.size()) return INFINITY;
  double g = 0;
  for (std::size_t k = 0; k < a.by_rank.size(); ++k)
    g = std::max(g, std::abs(a.by_rank[k] - b.by_rank[k]));
  return g;
}

Verdict payment_consistency() {
  auto markets = oracle_corpus(500);
  markets.insert(markets.end(), corpus().begin(), corpus().end());
  double unrolled = 0, closed = 0;
  std::size_t closed_checked = 0;
  for (const auto& m : markets) {
    const auto alloc = mechanism::allocate(m);
    const auto rec = mechanism::price(m, alloc);
    unrolled = std::max(unrolled, max_gap(rec, mechanism::price_unrolled(m, alloc)));
    if (m.supply.size() >= m.demand.size()) {
      closed = std::max(closed, max_gap(rec, mechanism::price_closed_form(m, alloc)));
      ++closed_checked;
    }
  }
  std::ostringstream d;
  d << markets.size() << " markets, unrolled gap " << unrolled << ", closed-form gap "
    << closed << " on " << closed_checked;
  return {unrolled <= kPaymentTol && closed <= kPaymentTol && closed_checked > 0, d.str()};
}

const sim::AggregateRow* cell(const sim::ExperimentTable& t, sim::Scheme s,
                              std::uint32_t j, double tau) {
  for (const auto& a : t.aggregates)
    if (a.scheme == s && a.ugvs == j && a.tau == tau) return &a;
  return nullptr;
}

Verdict ugv_count_trends() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto spec = presets::sweep("fig-surplus", 1, kSeeds);
  const auto table = sim::run_experiment(*spec);
  const double secs = seconds_since(t0);
  const double tau = spec->grid.window_lengths.front();

  std::vector<std::string> broken;
  const sim::AggregateRow* prev = nullptr;
  for (std::uint32_t j : spec->grid.ugv_counts) {
    const auto* ours = cell(table, sim::Scheme::Ours, j, tau);
    const auto* opt = cell(table, sim::Scheme::Optimal, j, tau);
    const auto* fixed = cell(table, sim::Scheme::Static, j, tau);
    const std::string at = " at J=" + std::to_string(j);
    if (!ours || !opt || !fixed || ours->runs != kSeeds || opt->refused || ours->refused) {
      broken.push_back("missing or refused cell" + at);
      continue;
    }
    if (prev) {
      if (ours->satisfaction.mean < prev->satisfaction.mean - kTrendTol) broken.push_back("SL drop" + at);
      if (ours->uav_utility.mean < prev->uav_utility.mean - kTrendTol) broken.push_back("UAV utility drop" + at);
      if (ours->surplus.mean < prev->surplus.mean - kTrendTol) broken.push_back("surplus drop" + at);
    }
    if (ours->surplus.mean < fixed->surplus.mean - kTrendTol) broken.push_back("static above ours" + at);
    if (opt->surplus.mean < ours->surplus.mean - kUtilityTol) broken.push_back("optimal below ours" + at);
    prev = ours;
  }
  if (secs >= kSweepBudgetSeconds) broken.push_back("over time budget");
  std::ostringstream d;
  d << spec->grid.ugv_counts.size() << " J values x " << kSeeds << " seeds, " << secs << " s";
  for (const auto& b : broken) d << "; " << b;
  return {broken.empty(), d.str()};
}

Verdict window_length_trends() {
  const auto spec = presets::sweep("fig-window", 1, kSeeds);
  const auto table = sim::run_experiment(*spec);
  std::vector<std::string> broken;
  for (std::uint32_t j : spec->grid.ugv_counts) {
    double prev = -INFINITY;
    for (double tau : spec->grid.window_lengths) {
      const auto* c = cell(table, sim::Scheme::Ours, j, tau);
      if (!c || c->runs != kSeeds) {
        broken.push_back("missing cell J=" + std::to_string(j));
        continue;
      }
      if (c->uav_utility.mean < prev - kTrendTol)
        broken.push_back("drop at J=" + std::to_string(j) + " tau=" + std::to_string(tau));
      prev = c->uav_utility.mean;
    }
  }
  std::ostringstream d;
  d << spec->grid.ugv_counts.size() << " J values x " << spec->grid.window_lengths.size()
    << " window lengths x " << kSeeds << " seeds";
  for (const auto& b : broken) d << "; " << b;
  return {broken.empty(), d.str()};
}

Verdict energy_identities() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> speed(0.1, 20), mass(0.5, 5);
  const PowerParams p;
  double gap = 0;
  for (int k = 0; k < 10; ++k) {
    const double v = speed(rng), m = mass(rng);
    const double diff = energy::ascend_power(v, m, p.eps1, p.eps2, p.kappa3) -
                        energy::descend_power(v, m, p.eps1, p.eps2, p.kappa3);
    gap = std::max(gap, std::abs(diff - p.eps1 * m * kGravity * v));
  }

  // A long single run with every UAV bidding, checked after every slot.
  ScenarioConfig c;
  c.participation_threshold = 0;
  c.horizon_slots = 10000;
  sim::World w = sim::generate_scenario(c, 7, {.keep_markets = true});
  std::size_t out_of_band = 0;
  while (w.clock < w.config.horizon_slots) {
    sim::advance_slot(w);
    if (w.clock % w.config.slots_per_window() == 0) sim::close_window(w);
    for (const auto& a : w.uavs)
      out_of_band += a.state.soc < 0 || a.state.soc > a.state.battery_capacity;
  }

  std::vector<sim::WindowRecord> records = std::move(w.completed);
  for (sim::Scheme s : {sim::Scheme::Ours, sim::Scheme::Optimal, sim::Scheme::Static})
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      ScenarioConfig cs;
      cs.participation_threshold = 0;
      sim::World ws = sim::generate_scenario(cs, seed, {.scheme = s, .keep_markets = true});
      sim::run(ws);
      records.insert(records.end(), ws.completed.begin(), ws.completed.end());
    }
  double identity = 0;
  for (const auto& r : records) {
    double sum = 0;
    for (double u : r.outcome.uav_utilities) sum += u;
    for (double u : r.outcome.ugv_utilities) sum += u;
    identity = std::max(identity, std::abs(r.outcome.social_surplus - sum));
  }

  std::ostringstream d;
  d << "vertical gap " << gap << ", " << out_of_band << " SoC excursions over "
    << c.horizon_slots << " slots, surplus identity " << identity << " over "
    << records.size() << " windows";
  return {gap <= kEnergyTol && out_of_band == 0 && identity <= kUtilityTol && !records.empty(),
          d.str()};
}

int invoke_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"uavcharge"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Verdict determinism() {
  const fs::path root = fs::temp_directory_path() / "uavcharge_acceptance_determinism";
  fs::remove_all(root);
  std::size_t files = 0;
  std::vector<std::string> broken;
  for (std::string_view name : presets::names()) {
    const fs::path a = root / std::string(name) / "a", b = root / std::string(name) / "b";
    for (const auto& dir : {a, b}) {
      const int code = invoke_cli({"preset", std::string(name), "--seed", "11", "--out", dir.string()});
      if (code != cli::kOk) broken.push_back(std::string(name) + " exit " + std::to_string(code));
    }
    if (!fs::exists(a)) continue;
    for (const auto& entry : fs::directory_iterator(a)) {
      const auto other = b / entry.path().filename();
      ++files;
      if (!fs::exists(other) || slurp(entry.path()) != slurp(other))
        broken.push_back(entry.path().filename().string() + " differs");
    }
  }
  fs::remove_all(root);
  std::ostringstream d;
  d << presets::names().size() << " presets, " << files << " CSV pairs compared";
  for (const auto& x : broken) d << "; " << x;
  return {broken.empty() && files > 0, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"incentive compatibility", incentive_compatibility},
      {"individual rationality", individual_rationality},
      {"envy-freeness", envy_freeness},
      {"stability", stability},
      {"allocation optimality", allocation_optimality},
      {"payment consistency", payment_consistency},
      {"UGV-count trends", ugv_count_trends},
      {"window-length trends", window_length_trends},
      {"energy identities", energy_identities},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("[%s] %zu %s: %s\n", v.pass ? "PASS" : "FAIL", k + 1, criteria[k].first,
                v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
