#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "untn/analytical.hpp"
#include "untn/common.hpp"
#include "untn/deployment.hpp"
#include "untn/ntn.hpp"
#include "untn/protocol.hpp"
#include "untn/radio.hpp"
#include "untn/rng.hpp"
#include "untn/soil.hpp"
#include "untn/underground.hpp"

namespace untn {

struct TrafficModel {
  double period_s = 600.0;
  int payload_bytes = 10;
};

inline void validate_traffic(const TrafficModel& t) {
  if (t.period_s <= 0.0) throw ConfigError("traffic period_s must be positive");
  if (t.payload_bytes < 1) throw ConfigError("traffic payload_bytes must be >= 1");
}

struct RunControl {
  long long trials = 10000;
  std::uint64_t seed = 1;
  int bins = 20;
  LosMode los_mode = LosMode::ExpectedDb;
  bool shadow_fading = true;
  // LoRa receivers at these SNR margins rarely win a same-channel contention,
  // so collisions are destructive; LR-FHSS intra-fragment capture is retained.
  CaptureModel lora_capture = CaptureModel::Off;
  CaptureModel lrfhss_capture = CaptureModel::Sir;
  InterferenceMode interference = InterferenceMode::Poisson;
  int threads = 0;  // 0 = UNTN_THREADS environment override, else 1
};

inline void validate_run(const RunControl& r) {
  if (r.trials < 1) throw ConfigError("run trials must be >= 1");
  if (r.bins < 1) throw ConfigError("run bins must be >= 1");
  if (r.threads < 0) throw ConfigError("run threads must be >= 0");
}

inline int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("UNTN_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
      throw ConfigError("UNTN_THREADS must be a positive integer");
    return static_cast<int>(v);
  }
  return 1;
}

struct ScenarioConfig {
  std::string scenario_id = "scenario";
  Platform platform = Platform::Uav;
  double altitude_m = 100.0;
  double gateway_gain_dbi = 2.0;
  Environment environment = Environment::Rural;
  RadioConfig radio;
  std::vector<ModulationScheme> schemes;
  TrafficModel traffic;
  double n_devices = 50000.0;
  LayerStack stack;
  SoilProperties soil;
  bool soil_alpha_auto = true;
  bool soil_permittivity_auto = false;
  int soil_layer_index = -1;
  DeploymentModel deployment;
  RunControl run;
  EnvTables tables = EnvTables::builtin();
  std::string tables_path;  // empty means the builtin 38.811 excerpts
};

inline double platform_default_altitude_m(Platform p) {
  switch (p) {
    case Platform::Uav: return 100.0;
    case Platform::Hap: return 20e3;
    case Platform::Leo: return 550e3;
  }
  return 100.0;
}

inline double platform_default_gain_dbi(Platform p) {
  switch (p) {
    case Platform::Uav: return 2.0;
    case Platform::Hap: return 17.0;
    case Platform::Leo: return 35.0;
  }
  return 2.0;
}

inline void apply_platform_defaults(ScenarioConfig& cfg) {
  cfg.altitude_m = platform_default_altitude_m(cfg.platform);
  cfg.gateway_gain_dbi = platform_default_gain_dbi(cfg.platform);
  if (cfg.platform == Platform::Uav) {
    cfg.deployment.mode = DeploymentMode::DiscArea;
    cfg.deployment.area_km2 = footprint_area_km2_from_density(cfg.platform, cfg.n_devices);
  } else {
    cfg.deployment.mode = DeploymentMode::MinElevation;
    cfg.deployment.min_elevation_deg = 10.0;
  }
}

inline ScenarioConfig default_scenario() {
  ScenarioConfig cfg;
  cfg.schemes = {make_lora(7), make_lora(10), make_lora(12), make_lrfhss()};
  cfg.soil = SoilProperties{};
  cfg.soil.frequency_hz = cfg.radio.freq_hz;
  const double alpha_pipe =
      attenuation_from_loss_tangent(3.0, 0.005, cfg.radio.freq_hz);
  const double alpha_asphalt =
      attenuation_from_loss_tangent(7.0, 0.05, cfg.radio.freq_hz);
  cfg.stack.layers = {
      MediumLayer{"gas", 0.15, 1.0, 0.0},
      MediumLayer{"pipe_wall", 0.05, 3.0, alpha_pipe},
      MediumLayer{"soil", 0.6, 5.8, 0.0},
      MediumLayer{"asphalt", 0.1, 7.0, alpha_asphalt},
  };
  cfg.stack.multipath_margin_db = 27.0;
  cfg.stack.exit_permittivity = 1.0;
  cfg.soil_layer_index = 2;
  cfg.soil_alpha_auto = true;
  apply_platform_defaults(cfg);
  return cfg;
}

// Re-derives model-driven quantities (soil layer dielectrics) and validates
// the whole configuration. Called before any trial runs.
inline void resolve_scenario(ScenarioConfig& cfg) {
  validate_radio(cfg.radio);
  validate_traffic(cfg.traffic);
  validate_run(cfg.run);
  validate_deployment(cfg.deployment);
  if (cfg.n_devices <= 0.0) throw ConfigError("n_devices must be positive");
  if (cfg.schemes.empty()) throw ConfigError("at least one modulation scheme is required");
  if (cfg.altitude_m <= 0.0) throw ConfigError("platform altitude_m must be positive");
  if (cfg.platform == Platform::Uav) {
    g2u_shadow_sigma_db(cfg.environment, cfg.altitude_m);  // rejects unsupported environments
  } else {
    cfg.tables.at(cfg.environment, 45.0);  // rejects missing table rows
  }
  if (cfg.soil_layer_index >= 0) {
    if (cfg.soil_layer_index >= static_cast<int>(cfg.stack.layers.size()))
      throw ConfigError("soil layer index outside the layer stack");
    cfg.soil.frequency_hz = cfg.radio.freq_hz;
    if (cfg.soil_alpha_auto || cfg.soil_permittivity_auto) {
      const SoilAttenuation sa = soil_attenuation_constant(cfg.soil);
      auto& layer = cfg.stack.layers[static_cast<std::size_t>(cfg.soil_layer_index)];
      if (cfg.soil_alpha_auto) layer.attenuation_np_per_m = sa.alpha_np_per_m;
      if (cfg.soil_permittivity_auto) layer.rel_permittivity = sa.eps_real;
    }
  }
  validate_stack(cfg.stack);
  for (const auto& s : cfg.schemes) {
    if (const auto* lora = std::get_if<LoraScheme>(&s)) {
      lora_snr_threshold_db(lora->sf);
      if (cfg.traffic.payload_bytes + lora->frame_overhead_bytes > 255)
        throw ConfigError("LoRa frame exceeds 255 bytes");
    } else {
      lrfhss_fragment_count(cfg.traffic.payload_bytes, std::get<LrFhssScheme>(s).cr);
    }
  }
}

inline double scheme_airtime_s(const ModulationScheme& scheme, const TrafficModel& traffic) {
  if (const auto* lora = std::get_if<LoraScheme>(&scheme))
    return lora_time_on_air_s(*lora, traffic.payload_bytes + lora->frame_overhead_bytes);
  const auto& fhss = std::get<LrFhssScheme>(scheme);
  const int n_f = lrfhss_fragment_count(traffic.payload_bytes, fhss.cr);
  return fhss.header_replicas * fhss.t_header_s + n_f * fhss.t_fragment_s;
}

// ---------------------------------------------------------------------------
// Aboveground link model shared by targets and interferers
// ---------------------------------------------------------------------------

struct ShadowState {
  double z_los = 0.0;
  double z_nlos = 0.0;
  double u_los = 0.0;
};

class LinkModel {
 public:
  LinkModel(Platform platform, Environment env, const EnvTables& tables, double altitude_m,
            double freq_hz, LosMode los_mode, bool shadow_fading)
      : platform_(platform),
        env_(env),
        tables_(&tables),
        altitude_m_(altitude_m),
        freq_hz_(freq_hz),
        los_mode_(los_mode),
        shadow_(shadow_fading) {}

  ShadowState draw_state(RandomStream& rng) const {
    ShadowState s;
    if (shadow_) {
      s.z_los = rng.normal();
      s.z_nlos = rng.normal();
    }
    s.u_los = rng.uniform01();
    return s;
  }

  double loss_db(const DevicePosition& pos, const ShadowState& s) const {
    if (platform_ == Platform::Uav)
      return g2u_path_loss_db(env_, altitude_m_, pos.slant_m, freq_hz_, s.z_los);
    const EnvRow row = tables_->at(env_, pos.elevation_deg);
    const bool los = s.u_los < row.p_los;
    return g2x_path_loss_db(row, freq_hz_, pos.slant_m, los_mode_, s.z_los, s.z_nlos, los);
  }

  double sampled_loss_db(const DevicePosition& pos, RandomStream& rng) const {
    const ShadowState s = draw_state(rng);
    return loss_db(pos, s);
  }

  // Closed-form P(rx_const - loss >= threshold) at a fixed position.
  double snr_success_probability(const DevicePosition& pos, double rx_const_dbm,
                                 double threshold_dbm) const {
    if (platform_ == Platform::Uav) {
      const double median = g2u_median_path_loss_db(env_, altitude_m_, pos.slant_m, freq_hz_);
      const double margin = rx_const_dbm - median - threshold_dbm;
      if (!shadow_) return margin >= 0.0 ? 1.0 : 0.0;
      return normal_cdf(margin / g2u_shadow_sigma_db(env_, altitude_m_));
    }
    const EnvRow row = tables_->at(env_, pos.elevation_deg);
    const double fs = free_space_path_loss_db(freq_hz_, pos.slant_m);
    const double margin = rx_const_dbm - fs - threshold_dbm;
    if (los_mode_ == LosMode::Sampled) {
      const double p_los = shadow_ ? normal_cdf(margin / row.sigma_los_db)
                                   : (margin >= 0.0 ? 1.0 : 0.0);
      const double m_nlos = margin - row.clutter_nlos_db;
      const double p_nlos = shadow_ ? normal_cdf(m_nlos / row.sigma_nlos_db)
                                    : (m_nlos >= 0.0 ? 1.0 : 0.0);
      return row.p_los * p_los + (1.0 - row.p_los) * p_nlos;
    }
    const double m_blend = margin - (1.0 - row.p_los) * row.clutter_nlos_db;
    if (!shadow_) return m_blend >= 0.0 ? 1.0 : 0.0;
    const double sigma = std::hypot(row.p_los * row.sigma_los_db,
                                    (1.0 - row.p_los) * row.sigma_nlos_db);
    return normal_cdf(m_blend / sigma);
  }

 private:
  Platform platform_;
  Environment env_;
  const EnvTables* tables_;
  double altitude_m_;
  double freq_hz_;
  LosMode los_mode_;
  bool shadow_;
};

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

struct BinCounts {
  long long trials = 0;
  long long snr_ok = 0;
  long long sir_ok = 0;
  long long delivered = 0;

  void merge(const BinCounts& o) {
    trials += o.trials;
    snr_ok += o.snr_ok;
    sir_ok += o.sir_ok;
    delivered += o.delivered;
  }
};

inline double safe_ratio(long long num, long long den) {
  return den > 0 ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
}

struct SchemeStats {
  std::string scheme;
  double airtime_s = 0.0;
  std::vector<BinCounts> bins;
  BinCounts total;

  double p_snr() const { return safe_ratio(total.snr_ok, total.trials); }
  double p_sir() const { return safe_ratio(total.sir_ok, total.trials); }
  double p_s() const { return safe_ratio(total.delivered, total.trials); }
};

struct ScenarioResult {
  std::string scenario_id;
  Footprint footprint;
  BinGrid grid;
  double pl_underground_db = 0.0;
  std::vector<SchemeStats> schemes;
};

// ---------------------------------------------------------------------------
// Monte Carlo engine
// ---------------------------------------------------------------------------

namespace detail {

inline constexpr double kNoiseDisabledDbm = -1e9;

struct TrialContext {
  const ScenarioConfig* cfg;
  const Footprint* footprint;
  const BinGrid* grid;
  const LinkModel* link;
  double pl_u_db;
  double rx_const_dbm;  // tx + both antenna gains - PL_u
};

// One trial of one scheme. The SNR gate uses the target's sampled link; the
// interference gate reruns the reception decision with the noise gate
// disabled, which is equivalent to the joint decision because every event of
// one uplink shares the target's received power.
template <typename Scheme>
struct SchemeTrial;

template <>
struct SchemeTrial<LoraScheme> {
  static void run(const TrialContext& ctx, const LoraScheme& scheme, int scheme_index,
                  long long trial, BinCounts* bin_accum) {
    const ScenarioConfig& cfg = *ctx.cfg;
    RandomStream geo(cfg.run.seed, kStreamTargetGeometry, static_cast<std::uint64_t>(trial));
    const DevicePosition pos = draw_position(*ctx.footprint, geo);
    RandomStream chan(cfg.run.seed, kStreamTargetChannel, static_cast<std::uint64_t>(trial));
    const ShadowState shadow = ctx.link->draw_state(chan);
    const double above_db = ctx.link->loss_db(pos, shadow);
    const LinkBudget lb = make_link_budget(cfg.radio, cfg.gateway_gain_dbi, ctx.pl_u_db, above_db,
                                           scheme.bandwidth_hz);
    const bool snr = lb.snr_db >= scheme.snr_threshold_db;

    const double toa = lora_time_on_air_s(scheme, cfg.traffic.payload_bytes +
                                                      scheme.frame_overhead_bytes);
    TransmissionEvent target;
    target.start_s = 0.0;
    target.duration_s = toa;
    target.channel_index =
        static_cast<int>(chan.uniform_int(static_cast<std::uint64_t>(scheme.channels)));
    target.rx_power_dbm = lb.rx_power_dbm;

    RandomStream intf(cfg.run.seed, kStreamInterference + static_cast<std::uint64_t>(scheme_index),
                      static_cast<std::uint64_t>(trial));
    const auto power = [&](RandomStream& r) {
      const DevicePosition ip = draw_position(*ctx.footprint, r);
      return ctx.rx_const_dbm - ctx.link->sampled_loss_db(ip, r);
    };
    std::vector<TransmissionEvent> events;
    if (cfg.run.interference == InterferenceMode::Poisson) {
      events = sample_lora_interference(cfg.n_devices, cfg.traffic.period_s, toa, scheme.channels,
                                        intf, power);
    } else {
      const long long others = std::max<long long>(std::llround(cfg.n_devices) - 1, 0);
      events = exhaustive_lora_interference(others, cfg.traffic.period_s, toa, scheme.channels,
                                            intf, power);
    }
    const ReceptionOutcome sir_outcome = lora_receive(target, events, scheme,
                                                      cfg.radio.sir_threshold_db,
                                                      kNoiseDisabledDbm, cfg.run.lora_capture);
    const bool sir = sir_outcome.delivered;

    BinCounts& bc = bin_accum[ctx.grid->index(pos.slant_m)];
    bc.trials += 1;
    bc.snr_ok += snr ? 1 : 0;
    bc.sir_ok += sir ? 1 : 0;
    bc.delivered += (snr && sir) ? 1 : 0;
  }
};

template <>
struct SchemeTrial<LrFhssScheme> {
  static void run(const TrialContext& ctx, const LrFhssScheme& scheme, int scheme_index,
                  long long trial, BinCounts* bin_accum) {
    const ScenarioConfig& cfg = *ctx.cfg;
    RandomStream geo(cfg.run.seed, kStreamTargetGeometry, static_cast<std::uint64_t>(trial));
    const DevicePosition pos = draw_position(*ctx.footprint, geo);
    RandomStream chan(cfg.run.seed, kStreamTargetChannel, static_cast<std::uint64_t>(trial));
    const ShadowState shadow = ctx.link->draw_state(chan);
    const double above_db = ctx.link->loss_db(pos, shadow);
    const LinkBudget lb = make_link_budget(cfg.radio, cfg.gateway_gain_dbi, ctx.pl_u_db, above_db,
                                           scheme.obw_bandwidth_hz);
    const bool snr = lb.snr_db >= scheme.snr_threshold_db;

    FragmentPlan plan = lrfhss_schedule(cfg.traffic.payload_bytes, scheme, chan);
    set_plan_power(plan, lb.rx_power_dbm);
    const double span = plan_span_s(plan);
    const int n_f = static_cast<int>(plan.payload_events.size());

    RandomStream intf(cfg.run.seed, kStreamInterference + static_cast<std::uint64_t>(scheme_index),
                      static_cast<std::uint64_t>(trial));
    const auto power = [&](RandomStream& r) {
      const DevicePosition ip = draw_position(*ctx.footprint, r);
      return ctx.rx_const_dbm - ctx.link->sampled_loss_db(ip, r);
    };
    std::vector<TransmissionEvent> events;
    if (cfg.run.interference == InterferenceMode::Poisson) {
      events = sample_lrfhss_interference(scheme, n_f, cfg.n_devices, cfg.traffic.period_s, span,
                                          intf, power);
    } else {
      const long long others = std::max<long long>(std::llround(cfg.n_devices) - 1, 0);
      events = exhaustive_lrfhss_interference(others, cfg.traffic.period_s,
                                              cfg.traffic.payload_bytes, scheme, intf, power);
    }
    const ReceptionOutcome sir_outcome =
        lrfhss_receive(plan, events, scheme, cfg.radio.sir_threshold_db, kNoiseDisabledDbm,
                       cfg.run.lrfhss_capture);
    const bool sir = sir_outcome.delivered;

    BinCounts& bc = bin_accum[ctx.grid->index(pos.slant_m)];
    bc.trials += 1;
    bc.snr_ok += snr ? 1 : 0;
    bc.sir_ok += sir ? 1 : 0;
    bc.delivered += (snr && sir) ? 1 : 0;
  }
};

inline void run_trials(const TrialContext& ctx, const ModulationScheme& scheme, int scheme_index,
                       long long lo, long long hi, BinCounts* bin_accum) {
  for (long long t = lo; t < hi; ++t) {
    if (const auto* lora = std::get_if<LoraScheme>(&scheme)) {
      SchemeTrial<LoraScheme>::run(ctx, *lora, scheme_index, t, bin_accum);
    } else {
      SchemeTrial<LrFhssScheme>::run(ctx, std::get<LrFhssScheme>(scheme), scheme_index, t,
                                     bin_accum);
    }
  }
}

}  // namespace detail

inline ScenarioResult run_scenario(ScenarioConfig cfg) {
  resolve_scenario(cfg);
  const Footprint footprint = make_footprint(cfg.platform, cfg.altitude_m, cfg.deployment);
  const BinGrid grid = make_bin_grid(footprint, cfg.run.bins);
  const LinkModel link(cfg.platform, cfg.environment, cfg.tables, cfg.altitude_m,
                       cfg.radio.freq_hz, cfg.run.los_mode, cfg.run.shadow_fading);
  const double pl_u = underground_path_loss_db(cfg.stack);
  const double rx_const =
      cfg.radio.tx_power_dbm + cfg.radio.ud_gain_dbi + cfg.gateway_gain_dbi - pl_u;

  detail::TrialContext ctx{&cfg, &footprint, &grid, &link, pl_u, rx_const};

  ScenarioResult result;
  result.scenario_id = cfg.scenario_id;
  result.footprint = footprint;
  result.grid = grid;
  result.pl_underground_db = pl_u;

  const int workers =
      static_cast<int>(std::min<long long>(resolve_thread_count(cfg.run.threads), cfg.run.trials));
  for (std::size_t si = 0; si < cfg.schemes.size(); ++si) {
    const ModulationScheme& scheme = cfg.schemes[si];
    SchemeStats stats;
    stats.scheme = scheme_name(scheme);
    stats.airtime_s = scheme_airtime_s(scheme, cfg.traffic);
    stats.bins.assign(static_cast<std::size_t>(grid.count), BinCounts{});

    std::vector<std::vector<BinCounts>> partial(
        static_cast<std::size_t>(workers),
        std::vector<BinCounts>(static_cast<std::size_t>(grid.count)));
    if (workers <= 1) {
      detail::run_trials(ctx, scheme, static_cast<int>(si), 0, cfg.run.trials, partial[0].data());
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(workers));
      for (int w = 0; w < workers; ++w) {
        const long long lo = cfg.run.trials * w / workers;
        const long long hi = cfg.run.trials * (w + 1) / workers;
        pool.emplace_back([&, w, lo, hi] {
          detail::run_trials(ctx, scheme, static_cast<int>(si), lo, hi,
                             partial[static_cast<std::size_t>(w)].data());
        });
      }
      for (auto& th : pool) th.join();
    }
    for (const auto& part : partial)
      for (std::size_t b = 0; b < part.size(); ++b) stats.bins[b].merge(part[b]);
    for (const auto& bc : stats.bins) stats.total.merge(bc);
    result.schemes.push_back(std::move(stats));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Analytical cross-check (per-bin zeta averaging)
// ---------------------------------------------------------------------------

struct AnalyticalRow {
  double bin_low_m = 0.0;
  double bin_high_m = 0.0;
  double elevation_deg = 0.0;
  double mass = 0.0;
  double zeta = 0.0;
  double p_fhss = 0.0;
};

struct AnalyticalResult {
  std::string scenario_id;
  BinGrid grid;
  double a_h = 0.0;
  double a_f = 0.0;
  double p_avg = 0.0;
  std::vector<AnalyticalRow> rows;
};

// Mass-weighted SNR success probability over a slant interval.
inline double bin_zeta(const LinkModel& link, const Footprint& footprint, double lo_m, double hi_m,
                       double rx_const_dbm, double threshold_dbm, int subpoints = 8) {
  double weighted = 0.0;
  double mass = 0.0;
  for (int j = 0; j < subpoints; ++j) {
    const double a = lo_m + (hi_m - lo_m) * j / subpoints;
    const double b = lo_m + (hi_m - lo_m) * (j + 1) / subpoints;
    const double w = bin_probability(footprint, a, b);
    if (w <= 0.0) continue;
    DevicePosition pos;
    pos.slant_m = 0.5 * (a + b);
    pos.elevation_deg = elevation_from_slant_deg(footprint.altitude_m, pos.slant_m);
    weighted += w * link.snr_success_probability(pos, rx_const_dbm, threshold_dbm);
    mass += w;
  }
  return mass > 0.0 ? weighted / mass : 0.0;
}

inline AnalyticalResult analytical_fhss(ScenarioConfig cfg) {
  resolve_scenario(cfg);
  const LrFhssScheme* fhss = nullptr;
  for (const auto& s : cfg.schemes)
    if (const auto* f = std::get_if<LrFhssScheme>(&s)) fhss = f;
  if (fhss == nullptr) throw ConfigError("analytical model needs an lrfhss scheme in the list");

  const Footprint footprint = make_footprint(cfg.platform, cfg.altitude_m, cfg.deployment);
  const BinGrid grid = make_bin_grid(footprint, cfg.run.bins);
  const LinkModel link(cfg.platform, cfg.environment, cfg.tables, cfg.altitude_m,
                       cfg.radio.freq_hz, cfg.run.los_mode, cfg.run.shadow_fading);
  const double pl_u = underground_path_loss_db(cfg.stack);
  const double rx_const =
      cfg.radio.tx_power_dbm + cfg.radio.ud_gain_dbi + cfg.gateway_gain_dbi - pl_u;
  const double threshold =
      noise_floor_dbm(cfg.radio.noise_figure_db, fhss->obw_bandwidth_hz) + fhss->snr_threshold_db;

  AnalyticalInputs base = make_analytical_inputs(*fhss, cfg.n_devices,
                                                 1.0 / cfg.traffic.period_s,
                                                 cfg.traffic.payload_bytes, 1.0);
  const Arrivals arr = arrivals(base);

  AnalyticalResult out;
  out.scenario_id = cfg.scenario_id;
  out.grid = grid;
  out.a_h = arr.a_h;
  out.a_f = arr.a_f;
  double total_mass = 0.0;
  for (int b = 0; b < grid.count; ++b) {
    AnalyticalRow row;
    row.bin_low_m = grid.low(b);
    row.bin_high_m = grid.high(b);
    row.elevation_deg = elevation_from_slant_deg(footprint.altitude_m, grid.center(b));
    row.mass = bin_probability(footprint, row.bin_low_m, row.bin_high_m);
    row.zeta = bin_zeta(link, footprint, row.bin_low_m, row.bin_high_m, rx_const, threshold);
    AnalyticalInputs in = base;
    in.fragment_success = row.zeta;
    row.p_fhss = header_success(in, arr.a_h) * payload_success(in, arr.a_f);
    out.rows.push_back(row);
    out.p_avg += row.mass * row.p_fhss;
    total_mass += row.mass;
  }
  if (total_mass > 0.0) out.p_avg /= total_mass;
  return out;
}

// ---------------------------------------------------------------------------
// Sweeps and modulation selection
// ---------------------------------------------------------------------------

enum class SweepParameter { NDevices, BurialDepth, Vwc, EnvironmentParam, Elevation };

inline SweepParameter parse_sweep_parameter(const std::string& name) {
  if (name == "n_devices") return SweepParameter::NDevices;
  if (name == "burial_depth") return SweepParameter::BurialDepth;
  if (name == "vwc") return SweepParameter::Vwc;
  if (name == "environment") return SweepParameter::EnvironmentParam;
  if (name == "elevation") return SweepParameter::Elevation;
  throw ConfigError("unknown sweep parameter '" + name +
                    "'; expected one of n_devices, burial_depth, vwc, environment, elevation");
}

inline const char* to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::NDevices: return "n_devices";
    case SweepParameter::BurialDepth: return "burial_depth";
    case SweepParameter::Vwc: return "vwc";
    case SweepParameter::EnvironmentParam: return "environment";
    case SweepParameter::Elevation: return "elevation";
  }
  return "?";
}

struct SweepPoint {
  std::string value;
  bool ok = false;
  std::string error;
  ScenarioResult result;
};

inline ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepParameter param,
                                        const std::string& value) {
  ScenarioConfig cfg = base;
  switch (param) {
    case SweepParameter::NDevices: {
      cfg.n_devices = std::stod(value);
      if (cfg.platform == Platform::Uav && cfg.deployment.mode == DeploymentMode::DiscArea)
        cfg.deployment.area_km2 = footprint_area_km2_from_density(cfg.platform, cfg.n_devices);
      break;
    }
    case SweepParameter::BurialDepth: {
      if (cfg.soil_layer_index < 0 ||
          cfg.soil_layer_index >= static_cast<int>(cfg.stack.layers.size()))
        throw ConfigError("burial_depth sweep needs a soil layer");
      cfg.stack.layers[static_cast<std::size_t>(cfg.soil_layer_index)].thickness_m =
          std::stod(value);
      break;
    }
    case SweepParameter::Vwc: {
      cfg.soil.vwc_fraction = std::stod(value);
      if (!cfg.soil_alpha_auto)
        throw ConfigError("vwc sweep needs soil alpha in auto mode");
      break;
    }
    case SweepParameter::EnvironmentParam: {
      cfg.environment = environment_from_string(value);
      break;
    }
    case SweepParameter::Elevation: {
      const double theta = std::stod(value);
      cfg.deployment.mode = DeploymentMode::MinElevation;
      cfg.deployment.min_elevation_deg = theta;
      break;
    }
  }
  return cfg;
}

inline std::vector<SweepPoint> sweep(const ScenarioConfig& base, SweepParameter param,
                                     const std::vector<std::string>& values) {
  std::vector<SweepPoint> points;
  points.reserve(values.size());
  for (const auto& v : values) {
    SweepPoint point;
    point.value = v;
    try {
      ScenarioConfig cfg = apply_sweep_value(base, param, v);
      cfg.scenario_id = base.scenario_id + "/" + std::string(to_string(param)) + "=" + v;
      point.result = run_scenario(cfg);
      point.ok = true;
    } catch (const std::exception& e) {
      point.ok = false;
      point.error = e.what();
    }
    points.push_back(std::move(point));
  }
  return points;
}

struct SchemeScore {
  std::string scheme;
  double p_s = 0.0;
  double airtime_s = 0.0;
};

// Ranked best-first by scenario-averaged delivery probability; ties break
// toward the scheme with lower airtime.
inline std::vector<SchemeScore> select_best_modulation(const ScenarioConfig& cfg) {
  if (cfg.schemes.size() < 1) throw ConfigError("selection needs at least one candidate scheme");
  const ScenarioResult result = run_scenario(cfg);
  std::vector<SchemeScore> ranked;
  ranked.reserve(result.schemes.size());
  for (const auto& s : result.schemes) ranked.push_back({s.scheme, s.p_s(), s.airtime_s});
  std::sort(ranked.begin(), ranked.end(), [](const SchemeScore& a, const SchemeScore& b) {
    if (a.p_s != b.p_s) return a.p_s > b.p_s;
    if (a.airtime_s != b.airtime_s) return a.airtime_s < b.airtime_s;
    return a.scheme < b.scheme;
  });
  return ranked;
}

}  // namespace untn
