#pragma once

#include <cmath>

#include "untn/common.hpp"
#include "untn/radio.hpp"

namespace untn {

struct AnalyticalInputs {
  double n_devices = 50000.0;
  double msg_rate_per_s = 1.0 / 600.0;
  int header_count = 3;
  int fragment_count = 6;
  double t_header_s = 0.233472;
  double t_fragment_s = 0.1024;
  int channels = 280;
  double fragment_success = 1.0;  // per-fragment SNR success, i.i.d. across fragments
  int fragments_needed = 2;
};

inline void validate_analytical(const AnalyticalInputs& in) {
  if (in.n_devices <= 0.0) throw ConfigError("analytical model needs a positive device count");
  if (in.msg_rate_per_s <= 0.0) throw ConfigError("analytical model needs a positive message rate");
  if (in.header_count < 1) throw ConfigError("analytical model needs at least one header replica");
  if (in.fragment_count < 1) throw ConfigError("analytical model needs at least one fragment");
  if (in.t_header_s <= 0.0 || in.t_fragment_s <= 0.0)
    throw ConfigError("analytical model needs positive header and fragment durations");
  if (in.channels < 2) throw ConfigError("analytical model needs at least two channels");
  if (in.fragment_success < 0.0 || in.fragment_success > 1.0)
    throw ConfigError("fragment success probability must lie in [0, 1]");
  if (in.fragments_needed < 1 || in.fragments_needed > in.fragment_count)
    throw ConfigError("fragments needed must lie in [1, fragment count]");
}

struct Arrivals {
  double a_h = 0.0;
  double a_f = 0.0;
};

// Vulnerable-window arrival counts seen by one header and one fragment.
inline Arrivals arrivals(const AnalyticalInputs& in) {
  validate_analytical(in);
  const double lambda_h = in.header_count * in.msg_rate_per_s * in.n_devices;
  const double lambda_f = in.fragment_count * in.msg_rate_per_s * in.n_devices;
  Arrivals a;
  a.a_h = 2.0 * lambda_h * in.t_header_s + lambda_f * (in.t_header_s + in.t_fragment_s);
  a.a_f = 2.0 * lambda_f * in.t_fragment_s + lambda_h * (in.t_header_s + in.t_fragment_s);
  return a;
}

// P_h = 1 - (1 - zeta (1 - 1/C)^(A_h - 1))^N_h
inline double header_success(const AnalyticalInputs& in, double a_h) {
  const double exponent = std::fmax(a_h - 1.0, 0.0);
  const double p = in.fragment_success * std::pow(1.0 - 1.0 / in.channels, exponent);
  return 1.0 - std::pow(1.0 - p, in.header_count);
}

// P_f = 1 - sum_{k=0}^{phi-1} C(N_f, k) p_o^k (1 - p_o)^(N_f - k)
inline double payload_success(const AnalyticalInputs& in, double a_f) {
  const double exponent = std::fmax(a_f - 1.0, 0.0);
  const double p_o = in.fragment_success * std::pow(1.0 - 1.0 / in.channels, exponent);
  if (p_o <= 0.0) return 0.0;
  if (p_o >= 1.0) return 1.0;
  const double log_p = std::log(p_o);
  const double log_q = std::log1p(-p_o);
  const double n = in.fragment_count;
  double tail = 0.0;
  for (int k = 0; k < in.fragments_needed; ++k) {
    const double log_choose =
        std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    tail += std::exp(log_choose + k * log_p + (n - k) * log_q);
  }
  return 1.0 - std::fmin(tail, 1.0);
}

inline double packet_success(const AnalyticalInputs& in) {
  const Arrivals a = arrivals(in);
  return header_success(in, a.a_h) * payload_success(in, a.a_f);
}

inline AnalyticalInputs make_analytical_inputs(const LrFhssScheme& scheme, double n_devices,
                                               double msg_rate_per_s, int payload_bytes,
                                               double fragment_success) {
  AnalyticalInputs in;
  in.n_devices = n_devices;
  in.msg_rate_per_s = msg_rate_per_s;
  in.header_count = scheme.header_replicas;
  in.fragment_count = lrfhss_fragment_count(payload_bytes, scheme.cr);
  in.t_header_s = scheme.t_header_s;
  in.t_fragment_s = scheme.t_fragment_s;
  in.channels = scheme.obw_channels;
  in.fragment_success = fragment_success;
  in.fragments_needed = lrfhss_fragments_needed(in.fragment_count, scheme.cr);
  return in;
}

}  // namespace untn
