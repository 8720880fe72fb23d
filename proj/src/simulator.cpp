#include "uavcharge/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "uavcharge/csv.hpp"
#include "uavcharge/valuation.hpp"

namespace uavcharge::sim {

namespace {

// Arrival slack for kinematic legs; a leg shorter than this is complete.
constexpr double kArrival = 1e-9;

enum class Stream : std::uint32_t { Uavs = 1, Ugvs = 2, Markets = 3 };

std::mt19937_64 stream(std::uint64_t seed, Stream s) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(s)};
  return std::mt19937_64(seq);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  if (lo == hi) return lo;
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double mean(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

Vec2 horizontal(const Vec3& p) { return {p.x, p.y}; }

// Moves `from` toward `to` by at most `step`; true on arrival.
bool move_toward(Vec2& from, Vec2 to, double step) {
  const double d = distance(from, to);
  if (d <= step + kArrival) {
    from = to;
    return true;
  }
  from.x += (to.x - from.x) * step / d;
  from.y += (to.y - from.y) * step / d;
  return false;
}

double ugv_speed_ms(const UgvState& g) { return g.speed_kmh / 3.6; }

void drain(World& w, UavAgent& a, Activity activity, double dt) {
  a.state.activity = activity;
  a.state.soc = energy::soc_step(a.state.soc, activity, w.powers,
                                 a.state.discharge_efficiency, 1.0, dt,
                                 a.state.battery_capacity);
}

void release(World& w, UavAgent& a) {
  auto& g = w.ugvs.at(*a.partner);
  g.partner.reset();
  if (w.options.scheme == Scheme::Static) {
    g.phase = UgvPhase::Idle;
  } else {
    g.phase = UgvPhase::Returning;
    g.target = g.home;
  }
  a.partner.reset();
  a.phase = UavPhase::Ascending;
  a.leg_remaining = a.mission_altitude;
}

void charge(World& w, UavAgent& a, double dt) {
  auto& g = w.ugvs.at(*a.partner);
  const double p = g.state.transfer_power;
  double t = std::min(dt, a.leg_remaining);
  t = std::min(t, g.state.supply_remaining * kJoulesPerWh / p);
  t = std::max(t, 0.0);
  a.state.activity = Activity::Charging;
  a.state.soc = energy::soc_step(a.state.soc, Activity::Charging, w.powers,
                                 a.state.discharge_efficiency,
                                 g.state.transfer_efficiency, t,
                                 a.state.battery_capacity);
  const double drawn = p * t / kJoulesPerWh;
  g.drawn += drawn;
  g.delivered += drawn * g.state.transfer_efficiency;
  g.state.supply_remaining = std::max(0.0, g.state.supply_remaining - drawn);
  a.leg_remaining -= t;
  if (a.leg_remaining <= kArrival || g.state.supply_remaining <= 0) release(w, a);
}

bool partner_on_pad(const World& w, const UavAgent& a) {
  return a.partner && w.ugvs.at(*a.partner).phase == UgvPhase::Hosting;
}

void start_descent(UavAgent& a) {
  a.phase = UavPhase::Descending;
  a.leg_remaining = a.mission_altitude;
}

void step_uav(World& w, UavAgent& a) {
  const double dt = w.config.slot_length;
  switch (a.phase) {
    case UavPhase::Mission:
      drain(w, a, Activity::Hovering, dt);
      break;
    case UavPhase::ToRendezvous:
    case UavPhase::Returning: {
      drain(w, a, Activity::Flying, dt);
      Vec2 p = horizontal(a.state.position);
      const bool arrived = move_toward(p, a.target, a.state.velocity_max * dt);
      a.state.position.x = p.x;
      a.state.position.y = p.y;
      if (!arrived) break;
      if (a.phase == UavPhase::Returning) {
        a.phase = UavPhase::Mission;
      } else if (partner_on_pad(w, a)) {
        start_descent(a);
      } else {
        a.phase = UavPhase::AwaitCharger;
      }
      break;
    }
    case UavPhase::AwaitCharger:
      drain(w, a, Activity::Hovering, dt);
      if (partner_on_pad(w, a)) start_descent(a);
      break;
    case UavPhase::Descending:
      drain(w, a, Activity::Descending, dt);
      a.leg_remaining -= w.config.descend_speed * dt;
      a.state.position.z = std::max(0.0, a.leg_remaining);
      if (a.leg_remaining <= kArrival) {
        a.state.position.z = 0;
        a.phase = UavPhase::Charging;
        const auto& g = w.ugvs.at(*a.partner).state;
        a.leg_remaining = energy::charge_duration(
            a.state.soc, a.state.soc_satisfactory, g.transfer_power,
            a.state.discharge_efficiency, g.transfer_efficiency);
      }
      break;
    case UavPhase::Charging:
      charge(w, a, dt);
      break;
    case UavPhase::Ascending:
      drain(w, a, Activity::Ascending, dt);
      a.leg_remaining -= w.config.ascend_speed * dt;
      a.state.position.z = a.mission_altitude - std::max(0.0, a.leg_remaining);
      if (a.leg_remaining <= kArrival) {
        a.state.position.z = a.mission_altitude;
        a.phase = UavPhase::Returning;
        a.target = a.post;
      }
      break;
    case UavPhase::Retired:
      break;
  }
}

void step_ugv(World& w, UgvAgent& g) {
  const double step = ugv_speed_ms(g.state) * w.config.slot_length;
  if (g.phase == UgvPhase::EnRoute) {
    if (move_toward(g.state.position, g.target, step)) g.phase = UgvPhase::Hosting;
  } else if (g.phase == UgvPhase::Returning) {
    if (move_toward(g.state.position, g.target, step)) g.phase = UgvPhase::Idle;
  }
}

double current_qors(const World& w, std::size_t j) {
  if (w.options.scheme == Scheme::Static) return w.static_chargers.at(j).qors;
  return baselines::mobile_qors(w.spot, w.ugvs[j].state.position, w.reach(),
                                w.config.qors_floor);
}

}  // namespace

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Ours:
      return "ours";
    case Scheme::Optimal:
      return "optimal";
    case Scheme::Static:
      return "static";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : {Scheme::Ours, Scheme::Optimal, Scheme::Static})
    if (to_string(s) == name) return s;
  return std::nullopt;
}

World generate_scenario(const ScenarioConfig& config, std::uint64_t seed,
                        SimOptions options) {
  if (const auto v = validate(config); !v.empty())
    throw std::invalid_argument("invalid config: " + to_string(v.front()));

  World w;
  w.config = config;
  w.options = options;
  w.seed = seed;
  w.spot = {config.spot_x, config.spot_y};
  w.task_radius = config.task_radius;
  w.base_station = {config.base_station_x, config.base_station_y,
                    config.base_station_z};
  w.rng.seed(seed);

  const double cap = config.battery_capacity;
  auto ur = stream(seed, Stream::Uavs);
  for (std::uint32_t i = 0; i < config.uav_count; ++i) {
    const double r = config.task_radius * std::sqrt(uniform(ur, 0, 1));
    const double theta = uniform(ur, 0, 2 * std::numbers::pi);
    const double z = uniform(ur, config.uav_altitude_min, config.uav_altitude_max);
    const double frac = uniform(ur, config.soc_lower, config.soc_upper);

    UavState s;
    s.id = UavId{i};
    s.position = {w.spot.x + r * std::cos(theta), w.spot.y + r * std::sin(theta), z};
    s.velocity_max = config.velocity_max;
    s.battery_capacity = cap;
    s.soc = frac * cap;
    s.soc_alert = config.alert_fraction * cap;
    s.soc_satisfactory = config.satisfactory_fraction * cap;
    s.activity = Activity::Hovering;
    s.mass = config.uav_mass;
    s.power = config.power;
    s.discharge_efficiency = config.discharge_efficiency;
    s.sensing_radius = config.sensing_radius;
    s.detection_angle = config.detection_angle;
    s.altitude_max = config.area_z;

    UavAgent a;
    a.state = make_uav(s);
    a.post = horizontal(s.position);
    a.target = a.post;
    a.mission_altitude = z;
    w.uavs.push_back(std::move(a));
  }

  auto gr = stream(seed, Stream::Ugvs);
  for (std::uint32_t j = 0; j < config.ugv_count; ++j) {
    const double d = uniform(gr, config.ugv_distance_min, config.ugv_distance_max);
    const double theta = uniform(gr, 0, 2 * std::numbers::pi);
    const double speed = uniform(gr, config.ugv_speed_min, config.ugv_speed_max);
    const Vec2 pos{w.spot.x + d * std::cos(theta), w.spot.y + d * std::sin(theta)};

    UgvState s;
    s.id = UgvId{j};
    s.position = pos;
    s.speed_kmh = speed;
    s.supply_capacity = config.ugv_supply;
    s.supply_remaining = config.ugv_supply;
    s.transfer_power = config.transfer_power;
    s.transfer_efficiency = config.transfer_efficiency;
    s.qors = baselines::mobile_qors(w.spot, pos, w.reach(), config.qors_floor);

    UgvAgent g;
    g.state = make_ugv(s);
    g.home = pos;
    g.target = pos;
    w.ugvs.push_back(std::move(g));

    w.static_chargers.push_back(
        {s.id, pos,
         baselines::static_qors(w.spot, pos, w.reach(), config.qors_floor)});
  }

  if (!w.uavs.empty())
    w.powers = energy::power_breakdown(
        w.uavs.front().state, config.velocity_max, config.thrust_or_weight(),
        config.descend_speed, config.ascend_speed, config.transfer_power);
  return w;
}

Vec2 rendezvous(Vec2 spot, Vec2 ugv) {
  return {(spot.x + ugv.x) / 2.0, (spot.y + ugv.y) / 2.0};
}

double satisfaction_level(const AuctionOutcome& outcome,
                          std::span<const double> mean_urgency) {
  double sl = 0;
  for (const auto& m : outcome.matches) sl += m.qors * mean_urgency[m.bidder];
  return sl;
}

void advance_slot(World& w) {
  const auto& c = w.config;
  for (std::size_t i = 0; i < w.uavs.size(); ++i) {
    auto& a = w.uavs[i];
    if (a.phase != UavPhase::Mission || a.queued) continue;
    const double rho = energy::charging_urgency_clamped(
        a.state.soc, a.state.soc_alert, a.state.battery_capacity);
    if (rho < c.participation_threshold) continue;
    a.queued = true;
    w.pending.push_back({i, w.now(), {}, {}});
  }
  for (auto& e : w.pending) {
    const auto& s = w.uavs[e.uav].state;
    const double rho =
        energy::charging_urgency_clamped(s.soc, s.soc_alert, s.battery_capacity);
    e.urgency_samples.push_back(rho);
    e.valuation_samples.push_back(valuation::instant_valuation(rho, c.mu0, c.mu1));
  }
  for (auto& g : w.ugvs) step_ugv(w, g);
  for (auto& a : w.uavs) step_uav(w, a);
  ++w.clock;
}

const WindowRecord& close_window(World& w) {
  const WindowId window{w.next_window++};
  const bool is_static = w.options.scheme == Scheme::Static;

  std::vector<mechanism::UavCandidate> uavs;
  std::vector<double> urgency_by_uav(w.uavs.size(), 0.0);
  for (const auto& e : w.pending) {
    if (e.valuation_samples.empty()) continue;
    const double phi = mean(e.valuation_samples);
    urgency_by_uav[e.uav] = mean(e.urgency_samples);
    const auto& s = w.uavs[e.uav].state;
    uavs.push_back({s, Bid{s.id, window, phi, e.submitted_at}, phi, true});
  }
  std::vector<mechanism::UgvCandidate> ugvs;
  for (std::size_t j = 0; j < w.ugvs.size(); ++j) {
    UgvState s = w.ugvs[j].state;
    s.qors = current_qors(w, j);
    ugvs.push_back({s, w.ugvs[j].phase == UgvPhase::Idle});
  }

  mechanism::WindowMarket market = mechanism::admit(uavs, ugvs, window);
  const AuctionOutcome outcome =
      w.options.scheme == Scheme::Optimal
          ? baselines::exhaustive_optimal(market, w.options.max_exhaustive_pairs)
          : mechanism::run_auction(market);

  std::vector<double> urgency(market.demand.size());
  for (std::size_t k = 0; k < market.demand.size(); ++k)
    urgency[k] = urgency_by_uav[raw(market.demand[k].uav)];

  WindowRecord rec;
  MetricsRow& row = rec.metrics;
  row.scheme = std::string(to_string(w.options.scheme));
  row.ugvs = w.config.ugv_count;
  row.tau = w.config.window_length;
  row.seed = w.seed;
  row.window = raw(window);
  row.satisfaction = satisfaction_level(outcome, urgency);
  for (double u : outcome.uav_utilities) row.uav_utility += u;
  for (double u : outcome.ugv_utilities) row.ugv_utility += u;
  row.surplus = outcome.social_surplus;
  row.non_envy_ratio = audit::non_envy_ratio(market, outcome).all_participants;
  row.winners = static_cast<std::uint32_t>(outcome.winner_count());
  row.bidders = static_cast<std::uint32_t>(market.demand.size());
  if (w.options.audit)
    rec.audit = audit::audit_outcome(
        market, outcome, row.scheme + "-w" + std::to_string(row.window),
        w.options.scheme != Scheme::Optimal);

  for (const auto& m : outcome.matches) {
    auto& a = w.uavs.at(raw(m.uav));
    auto& g = w.ugvs.at(raw(m.ugv));
    a.queued = false;
    a.failed_windows = 0;
    a.partner = raw(m.ugv);
    a.phase = UavPhase::ToRendezvous;
    g.partner = raw(m.uav);
    if (is_static) {
      a.target = g.state.position;
      g.phase = UgvPhase::Hosting;
    } else {
      a.target = rendezvous(w.spot, g.state.position);
      g.target = a.target;
      g.phase = UgvPhase::EnRoute;
    }
  }

  std::vector<QueueEntry> still_waiting;
  for (auto& e : w.pending) {
    auto& a = w.uavs[e.uav];
    if (!a.queued) continue;
    ++a.failed_windows;
    if (w.config.loser_exit_after > 0 &&
        a.failed_windows >= w.config.loser_exit_after) {
      a.queued = false;
      a.phase = UavPhase::Retired;
      continue;
    }
    e.submitted_at = w.now();
    e.urgency_samples.clear();
    e.valuation_samples.clear();
    still_waiting.push_back(std::move(e));
  }
  w.pending = std::move(still_waiting);

  if (w.options.keep_markets) {
    rec.market = std::move(market);
    rec.outcome = outcome;
  }
  w.completed.push_back(std::move(rec));
  return w.completed.back();
}

void run(World& w) {
  const std::uint32_t per_window = w.config.slots_per_window();
  while (w.clock < w.config.horizon_slots) {
    advance_slot(w);
    if (w.clock % per_window == 0) close_window(w);
  }
}

std::vector<MetricsRow> simulate(const ScenarioConfig& config,
                                 std::uint64_t seed, SimOptions options) {
  World w = generate_scenario(config, seed, options);
  run(w);
  std::vector<MetricsRow> rows;
  rows.reserve(w.completed.size());
  for (auto& r : w.completed) rows.push_back(std::move(r.metrics));
  return rows;
}

mechanism::WindowMarket random_market(const ScenarioConfig& config,
                                      std::uint64_t seed, std::size_t uavs,
                                      std::size_t ugvs, bool coarse) {
  auto rng = stream(seed, Stream::Markets);
  const double cap = config.battery_capacity;
  std::vector<mechanism::BidderEntry> demand;
  for (std::size_t i = 0; i < uavs; ++i) {
    const double soc = uniform(rng, config.soc_lower, config.soc_upper) * cap;
    const double rho =
        energy::charging_urgency_clamped(soc, config.alert_fraction * cap, cap);
    double phi = valuation::instant_valuation(rho, config.mu0, config.mu1);
    if (coarse) phi = std::max(0.5, std::round(phi * 2.0) / 2.0);
    demand.push_back({UavId{static_cast<std::uint32_t>(i)}, phi, phi});
  }
  std::vector<mechanism::SupplierEntry> supply;
  for (std::size_t j = 0; j < ugvs; ++j) {
    const double d = uniform(rng, config.ugv_distance_min, config.ugv_distance_max);
    double q = valuation::qors_from_distance(d, config.ugv_distance_max,
                                             config.qors_floor);
    if (coarse) q = std::max(0.1, std::round(q * 10.0) / 10.0);
    supply.push_back({UgvId{static_cast<std::uint32_t>(j)}, q});
  }
  return mechanism::make_market(WindowId{0}, std::move(demand), std::move(supply));
}

void write_metrics_header(std::ostream& out) {
  out << "scheme,J,tau,seed,window,SL,uav_utility,ugv_utility,surplus,"
         "non_envy_ratio,winners\n";
}

void write_metrics_row(std::ostream& out, const MetricsRow& r) {
  out << r.scheme << ',' << r.ugvs << ',' << fmt_num(r.tau) << ',' << r.seed
      << ',' << r.window << ',' << fmt_num(r.satisfaction) << ','
      << fmt_num(r.uav_utility) << ',' << fmt_num(r.ugv_utility) << ','
      << fmt_num(r.surplus) << ',' << fmt_num(r.non_envy_ratio) << ','
      << r.winners << '\n';
}

}  // namespace uavcharge::sim
