#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "untn/common.hpp"
#include "untn/radio.hpp"
#include "untn/rng.hpp"

namespace untn {

struct TransmissionEvent {
  double start_s = 0.0;
  double duration_s = 0.0;
  int channel_index = 0;
  double rx_power_dbm = 0.0;
};

inline double event_end_s(const TransmissionEvent& e) { return e.start_s + e.duration_s; }

inline bool events_overlap(const TransmissionEvent& a, const TransmissionEvent& b) {
  return a.channel_index == b.channel_index && a.start_s < event_end_s(b) &&
         b.start_s < event_end_s(a);
}

struct FragmentPlan {
  std::vector<TransmissionEvent> header_events;
  std::vector<TransmissionEvent> payload_events;
};

inline double plan_span_s(const FragmentPlan& plan) {
  double end = 0.0;
  for (const auto& e : plan.header_events) end = std::max(end, event_end_s(e));
  for (const auto& e : plan.payload_events) end = std::max(end, event_end_s(e));
  return end;
}

inline void set_plan_power(FragmentPlan& plan, double rx_power_dbm) {
  for (auto& e : plan.header_events) e.rx_power_dbm = rx_power_dbm;
  for (auto& e : plan.payload_events) e.rx_power_dbm = rx_power_dbm;
}

struct ReceptionOutcome {
  bool snr_ok = false;
  bool collided = false;
  bool captured = false;
  bool delivered = false;
  int headers_received = 0;
  int fragments_received = 0;
};

// Off ignores the capture effect entirely (any overlap destroys the event).
// Sir applies the SIR-threshold power test to every collision.
// PreambleLock additionally requires that no interferer started first, i.e.
// the receiver must have been free to lock onto this event's preamble. For
// LR-FHSS the lock rule applies to header replicas only; payload fragments
// are demodulated at hop times known from the header, so they keep the Sir
// rule.
enum class CaptureModel { Off, Sir, PreambleLock };

inline const char* to_string(CaptureModel m) {
  switch (m) {
    case CaptureModel::Off: return "off";
    case CaptureModel::Sir: return "sir";
    case CaptureModel::PreambleLock: return "preamble_lock";
  }
  return "?";
}

inline CaptureModel capture_model_from_string(const std::string& s) {
  if (s == "off") return CaptureModel::Off;
  if (s == "sir") return CaptureModel::Sir;
  if (s == "preamble_lock") return CaptureModel::PreambleLock;
  throw ConfigError("unknown capture model '" + s +
                    "'; expected one of off, sir, preamble_lock");
}

enum class InterferenceMode { Poisson, Exhaustive };

inline const char* to_string(InterferenceMode m) {
  return m == InterferenceMode::Poisson ? "poisson" : "exhaustive";
}

inline InterferenceMode interference_mode_from_string(const std::string& s) {
  if (s == "poisson") return InterferenceMode::Poisson;
  if (s == "exhaustive") return InterferenceMode::Exhaustive;
  throw ConfigError("unknown interference mode '" + s + "'; expected poisson or exhaustive");
}

// A LoRa packet occupies its channel for the whole time on air, so capture is
// judged against the aggregate of every interferer that overlaps the packet.
// An LR-FHSS fragment is demodulated symbol by symbol, so the interference
// that matters is the worst simultaneous aggregate at any instant within the
// fragment.
enum class SirAggregation { WindowSum, PeakInstant };

namespace detail {

struct EventDecision {
  bool received = true;
  bool collided = false;
  bool captured = false;
};

inline double peak_simultaneous_mw(const TransmissionEvent& target,
                                   const std::vector<TransmissionEvent>& interferers) {
  std::vector<std::pair<double, double>> edges;  // time, signed power delta
  for (const auto& i : interferers) {
    if (!events_overlap(target, i)) continue;
    const double mw = dbm_to_mw(i.rx_power_dbm);
    edges.emplace_back(std::max(i.start_s, target.start_s), mw);
    edges.emplace_back(std::min(event_end_s(i), event_end_s(target)), -mw);
  }
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;  // process removals before additions at ties
  });
  double level = 0.0;
  double peak = 0.0;
  for (const auto& [t, delta] : edges) {
    level += delta;
    peak = std::max(peak, level);
  }
  return peak;
}

inline EventDecision decide_event(const TransmissionEvent& target,
                                  const std::vector<TransmissionEvent>& interferers,
                                  double gamma_db, CaptureModel capture, bool lock_on_order,
                                  SirAggregation aggregation) {
  EventDecision d;
  double sum_mw = 0.0;
  bool earlier_starter = false;
  int overlapping = 0;
  for (const auto& i : interferers) {
    if (!events_overlap(target, i)) continue;
    ++overlapping;
    sum_mw += dbm_to_mw(i.rx_power_dbm);
    if (i.start_s < target.start_s) earlier_starter = true;
  }
  if (overlapping == 0) return d;
  d.collided = true;
  if (capture == CaptureModel::Off ||
      (capture == CaptureModel::PreambleLock && lock_on_order && earlier_starter)) {
    d.received = false;
    return d;
  }
  if (aggregation == SirAggregation::PeakInstant && overlapping > 1)
    sum_mw = peak_simultaneous_mw(target, interferers);
  d.captured = target.rx_power_dbm - mw_to_dbm(sum_mw) >= gamma_db;
  d.received = d.captured;
  return d;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Reception decisions
// ---------------------------------------------------------------------------

inline ReceptionOutcome lora_receive(const TransmissionEvent& target,
                                     const std::vector<TransmissionEvent>& interferers,
                                     const LoraScheme& scheme, double gamma_db, double noise_dbm,
                                     CaptureModel capture = CaptureModel::Sir) {
  ReceptionOutcome out;
  out.snr_ok = target.rx_power_dbm - noise_dbm >= scheme.snr_threshold_db;
  const auto d = detail::decide_event(target, interferers, gamma_db, capture,
                                      capture == CaptureModel::PreambleLock,
                                      SirAggregation::WindowSum);
  out.collided = d.collided;
  out.delivered = out.snr_ok && d.received;
  out.captured = out.delivered && d.collided;
  return out;
}

// N_h header replicas back to back, then N_f payload fragments, each on an
// independently uniform OBW channel.
inline FragmentPlan lrfhss_schedule(int payload_bytes, const LrFhssScheme& scheme,
                                    RandomStream& rng) {
  FragmentPlan plan;
  const int n_fragments = lrfhss_fragment_count(payload_bytes, scheme.cr);
  plan.header_events.reserve(static_cast<std::size_t>(scheme.header_replicas));
  plan.payload_events.reserve(static_cast<std::size_t>(n_fragments));
  double t = 0.0;
  for (int i = 0; i < scheme.header_replicas; ++i) {
    const int ch = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(scheme.obw_channels)));
    plan.header_events.push_back({t, scheme.t_header_s, ch, 0.0});
    t += scheme.t_header_s;
  }
  for (int j = 0; j < n_fragments; ++j) {
    const int ch = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(scheme.obw_channels)));
    plan.payload_events.push_back({t, scheme.t_fragment_s, ch, 0.0});
    t += scheme.t_fragment_s;
  }
  return plan;
}

inline ReceptionOutcome lrfhss_receive(const FragmentPlan& target,
                                       const std::vector<TransmissionEvent>& interferers,
                                       const LrFhssScheme& scheme, double gamma_db,
                                       double noise_dbm,
                                       CaptureModel capture = CaptureModel::Sir) {
  ReceptionOutcome out;
  const CaptureModel fragment_capture =
      capture == CaptureModel::PreambleLock ? CaptureModel::Sir : capture;
  for (const auto& h : target.header_events) {
    const bool snr = h.rx_power_dbm - noise_dbm >= scheme.snr_threshold_db;
    out.snr_ok = out.snr_ok || snr;
    const auto d = detail::decide_event(h, interferers, gamma_db, capture,
                                        capture == CaptureModel::PreambleLock,
                                        SirAggregation::PeakInstant);
    out.collided = out.collided || d.collided;
    if (snr && d.received) {
      ++out.headers_received;
      out.captured = out.captured || (d.collided && d.captured);
    }
  }
  for (const auto& f : target.payload_events) {
    const bool snr = f.rx_power_dbm - noise_dbm >= scheme.snr_threshold_db;
    out.snr_ok = out.snr_ok || snr;
    const auto d = detail::decide_event(f, interferers, gamma_db, fragment_capture, false,
                                        SirAggregation::PeakInstant);
    out.collided = out.collided || d.collided;
    if (snr && d.received) {
      ++out.fragments_received;
      out.captured = out.captured || (d.collided && d.captured);
    }
  }
  const int phi =
      lrfhss_fragments_needed(static_cast<int>(target.payload_events.size()), scheme.cr);
  out.delivered = out.headers_received >= 1 && out.fragments_received >= phi;
  return out;
}

// ---------------------------------------------------------------------------
// Interference sampling
// ---------------------------------------------------------------------------

// Poisson field over the target's vulnerability window. The target packet
// occupies [0, toa); an interferer of the same duration overlaps it iff its
// start falls in (-toa, toa), hence the 2 * rate * toa mean before the
// 1/channels thinning that the overlap test applies.
template <typename PowerDraw>
std::vector<TransmissionEvent> sample_lora_interference(double n_devices, double period_s,
                                                        double toa_s, int channels,
                                                        RandomStream& rng,
                                                        PowerDraw&& draw_power_dbm) {
  if (n_devices < 0.0) throw ConfigError("device count must be nonnegative");
  if (period_s <= 0.0) throw ConfigError("traffic period must be positive");
  if (toa_s <= 0.0) throw ConfigError("time on air must be positive");
  std::vector<TransmissionEvent> events;
  if (n_devices == 0.0) return events;
  const double mean = 2.0 * (n_devices / period_s) * toa_s;
  const long long count = rng.poisson(mean);
  events.reserve(static_cast<std::size_t>(count));
  for (long long k = 0; k < count; ++k) {
    TransmissionEvent e;
    e.start_s = rng.uniform(-toa_s, toa_s);
    e.duration_s = toa_s;
    e.channel_index = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(channels)));
    e.rx_power_dbm = draw_power_dbm(rng);
    events.push_back(e);
  }
  return events;
}

// Poisson field around an LR-FHSS plan spanning [0, span). Interferer headers
// arrive at rate N_h * N / T and payload fragments at N_f * N / T, matching
// the arrival structure the closed-form model integrates over; any event
// whose interval can intersect the plan's span is generated.
template <typename PowerDraw>
std::vector<TransmissionEvent> sample_lrfhss_interference(const LrFhssScheme& scheme,
                                                          int fragment_count, double n_devices,
                                                          double period_s, double span_s,
                                                          RandomStream& rng,
                                                          PowerDraw&& draw_power_dbm) {
  if (n_devices < 0.0) throw ConfigError("device count must be nonnegative");
  if (period_s <= 0.0) throw ConfigError("traffic period must be positive");
  if (fragment_count < 1) throw ConfigError("fragment count must be >= 1");
  if (span_s <= 0.0) throw ConfigError("plan span must be positive");
  std::vector<TransmissionEvent> events;
  if (n_devices == 0.0) return events;
  const double msg_rate = n_devices / period_s;
  const double lambda_h = scheme.header_replicas * msg_rate;
  const double lambda_f = fragment_count * msg_rate;
  const long long n_headers = rng.poisson(lambda_h * (span_s + scheme.t_header_s));
  const long long n_fragments = rng.poisson(lambda_f * (span_s + scheme.t_fragment_s));
  events.reserve(static_cast<std::size_t>(n_headers + n_fragments));
  for (long long k = 0; k < n_headers; ++k) {
    TransmissionEvent e;
    e.start_s = rng.uniform(-scheme.t_header_s, span_s);
    e.duration_s = scheme.t_header_s;
    e.channel_index =
        static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(scheme.obw_channels)));
    e.rx_power_dbm = draw_power_dbm(rng);
    events.push_back(e);
  }
  for (long long k = 0; k < n_fragments; ++k) {
    TransmissionEvent e;
    e.start_s = rng.uniform(-scheme.t_fragment_s, span_s);
    e.duration_s = scheme.t_fragment_s;
    e.channel_index =
        static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(scheme.obw_channels)));
    e.rx_power_dbm = draw_power_dbm(rng);
    events.push_back(e);
  }
  return events;
}

// Explicit every-device scheduler over one traffic period, for oracle
// comparison against the Poisson sampler at small N. Each device transmits
// once per period at an independent uniform phase; the period is treated as
// a ring, so each event is emitted twice (at phase and phase - period) and
// the overlap test keeps at most one copy. Requires period >= 2 * airtime.
template <typename PowerDraw>
std::vector<TransmissionEvent> exhaustive_lora_interference(long long n_other_devices,
                                                            double period_s, double toa_s,
                                                            int channels, RandomStream& rng,
                                                            PowerDraw&& draw_power_dbm) {
  if (n_other_devices < 0) throw ConfigError("device count must be nonnegative");
  if (period_s < 2.0 * toa_s)
    throw ConfigError("exhaustive mode needs period >= 2x airtime");
  std::vector<TransmissionEvent> events;
  events.reserve(static_cast<std::size_t>(2 * n_other_devices));
  for (long long d = 0; d < n_other_devices; ++d) {
    const double phase = rng.uniform(0.0, period_s);
    const int ch = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(channels)));
    const double power = draw_power_dbm(rng);
    events.push_back({phase, toa_s, ch, power});
    events.push_back({phase - period_s, toa_s, ch, power});
  }
  return events;
}

template <typename PowerDraw>
std::vector<TransmissionEvent> exhaustive_lrfhss_interference(
    long long n_other_devices, double period_s, int payload_bytes, const LrFhssScheme& scheme,
    RandomStream& rng, PowerDraw&& draw_power_dbm) {
  if (n_other_devices < 0) throw ConfigError("device count must be nonnegative");
  std::vector<TransmissionEvent> events;
  for (long long d = 0; d < n_other_devices; ++d) {
    FragmentPlan plan = lrfhss_schedule(payload_bytes, scheme, rng);
    if (period_s < 2.0 * plan_span_s(plan))
      throw ConfigError("exhaustive mode needs period >= 2x transmission span");
    const double phase = rng.uniform(0.0, period_s);
    const double power = draw_power_dbm(rng);
    for (const auto* part : {&plan.header_events, &plan.payload_events}) {
      for (const auto& e : *part) {
        events.push_back({phase + e.start_s, e.duration_s, e.channel_index, power});
        events.push_back({phase + e.start_s - period_s, e.duration_s, e.channel_index, power});
      }
    }
  }
  return events;
}

}  // namespace untn
