#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "untn/common.hpp"

namespace untn {

struct RadioConfig {
  double freq_hz = 433e6;
  double tx_power_dbm = 14.0;
  double ud_gain_dbi = 2.15;
  double noise_figure_db = 6.0;
  double sir_threshold_db = 6.0;
};

inline void validate_radio(const RadioConfig& r) {
  if (r.freq_hz <= 0.0) throw ConfigError("carrier frequency must be positive");
  if (r.noise_figure_db < 0.0) throw ConfigError("noise figure must be >= 0 dB");
}

// ---------------------------------------------------------------------------
// Modulation schemes
// ---------------------------------------------------------------------------

inline double lora_snr_threshold_db(int sf) {
  switch (sf) {
    case 7: return -6.0;
    case 10: return -15.0;
    case 12: return -20.0;
  }
  throw ConfigError("unsupported LoRa spreading factor " + std::to_string(sf) +
                    "; supported set {7, 10, 12}");
}

inline double lora_sensitivity_dbm(int sf) {
  switch (sf) {
    case 7: return -123.0;
    case 10: return -132.0;
    case 12: return -137.0;
  }
  throw ConfigError("unsupported LoRa spreading factor " + std::to_string(sf) +
                    "; supported set {7, 10, 12}");
}

struct LoraScheme {
  int sf = 10;
  double bandwidth_hz = 125e3;
  int channels = 80;
  int coding_rate = 1;  // rate 4/(4+coding_rate)
  int preamble_symbols = 8;
  int frame_overhead_bytes = 13;  // LoRaWAN MHDR+FHDR+FPort+MIC around the app payload
  double snr_threshold_db = -15.0;
  double sensitivity_dbm = -132.0;
};

enum class LrFhssCr { Cr13, Cr23 };

inline double lrfhss_cr_fraction(LrFhssCr cr) { return cr == LrFhssCr::Cr13 ? 1.0 / 3.0 : 2.0 / 3.0; }

inline const char* to_string(LrFhssCr cr) { return cr == LrFhssCr::Cr13 ? "1/3" : "2/3"; }

// DR8-profile defaults.
struct LrFhssScheme {
  int obw_channels = 280;
  int header_replicas = 3;
  LrFhssCr cr = LrFhssCr::Cr13;
  double t_header_s = 0.233472;
  double t_fragment_s = 0.1024;
  double obw_bandwidth_hz = 488.0;
  double snr_threshold_db = 4.0;
  double sensitivity_dbm = -137.0;
};

using ModulationScheme = std::variant<LoraScheme, LrFhssScheme>;

inline LoraScheme make_lora(int sf) {
  LoraScheme s;
  s.sf = sf;
  s.snr_threshold_db = lora_snr_threshold_db(sf);
  s.sensitivity_dbm = lora_sensitivity_dbm(sf);
  return s;
}

inline LrFhssScheme make_lrfhss() { return LrFhssScheme{}; }

inline std::string scheme_name(const ModulationScheme& scheme) {
  if (const auto* lora = std::get_if<LoraScheme>(&scheme))
    return "sf" + std::to_string(lora->sf);
  return "lrfhss";
}

inline double scheme_snr_threshold_db(const ModulationScheme& scheme) {
  if (const auto* lora = std::get_if<LoraScheme>(&scheme)) return lora->snr_threshold_db;
  return std::get<LrFhssScheme>(scheme).snr_threshold_db;
}

inline double scheme_noise_bandwidth_hz(const ModulationScheme& scheme) {
  if (const auto* lora = std::get_if<LoraScheme>(&scheme)) return lora->bandwidth_hz;
  return std::get<LrFhssScheme>(scheme).obw_bandwidth_hz;
}

// ---------------------------------------------------------------------------
// Link budget
// ---------------------------------------------------------------------------

struct LinkBudget {
  double pl_underground_db = 0.0;
  double pl_aboveground_db = 0.0;
  double rx_power_dbm = 0.0;
  double noise_dbm = 0.0;
  double snr_db = 0.0;
};

// P_r = P_ut + G_ut + G_r - PL_u - PL_above  [dBm]
inline double received_power_dbm(const RadioConfig& radio, double platform_gain_dbi,
                                 double pl_u_db, double pl_above_db) {
  if (pl_u_db < 0.0 || pl_above_db < 0.0)
    throw ConfigError("path losses must be nonnegative dB");
  return radio.tx_power_dbm + radio.ud_gain_dbi + platform_gain_dbi - pl_u_db - pl_above_db;
}

// sigma_w^2 = -174 + NF + 10 log10(B)  [dBm]
inline double noise_floor_dbm(double nf_db, double bandwidth_hz) {
  if (bandwidth_hz <= 0.0) throw ConfigError("noise bandwidth must be positive");
  return -174.0 + nf_db + 10.0 * std::log10(bandwidth_hz);
}

inline LinkBudget make_link_budget(const RadioConfig& radio, double platform_gain_dbi,
                                   double pl_u_db, double pl_above_db, double bandwidth_hz) {
  LinkBudget lb;
  lb.pl_underground_db = pl_u_db;
  lb.pl_aboveground_db = pl_above_db;
  lb.rx_power_dbm = received_power_dbm(radio, platform_gain_dbi, pl_u_db, pl_above_db);
  lb.noise_dbm = noise_floor_dbm(radio.noise_figure_db, bandwidth_hz);
  lb.snr_db = lb.rx_power_dbm - lb.noise_dbm;
  return lb;
}

inline bool snr_pass(const LinkBudget& link, const ModulationScheme& scheme) {
  return link.snr_db >= scheme_snr_threshold_db(scheme);
}

// True iff target power / sum of interferer powers >= gamma in linear domain.
// An empty interferer list passes.
inline bool sir_capture_pass(double target_rx_dbm, const std::vector<double>& interferer_rx_dbm,
                             double gamma_db) {
  if (interferer_rx_dbm.empty()) return true;
  double sum_mw = 0.0;
  for (double p : interferer_rx_dbm) sum_mw += dbm_to_mw(p);
  return target_rx_dbm - mw_to_dbm(sum_mw) >= gamma_db;
}

// ---------------------------------------------------------------------------
// Airtime
// ---------------------------------------------------------------------------

enum class Ldro { Auto, Off, On };

// LoRaWAN time-on-air. With Ldro::Auto the low-data-rate optimization turns
// on for SF11/SF12 at bandwidths up to 125 kHz.
inline double lora_time_on_air_s(int sf, double bw_hz, int payload_bytes, int coding_rate,
                                 int preamble_symbols, bool explicit_header, bool crc_on,
                                 Ldro ldro = Ldro::Auto) {
  if (sf < 5 || sf > 12) throw ConfigError("time-on-air needs spreading factor in [5, 12]");
  if (bw_hz <= 0.0) throw ConfigError("time-on-air needs positive bandwidth");
  if (payload_bytes < 0 || payload_bytes > 255)
    throw ConfigError("LoRa payload must be 0..255 bytes");
  if (coding_rate < 1 || coding_rate > 4) throw ConfigError("LoRa coding rate index must be 1..4");
  const bool de = ldro == Ldro::On || (ldro == Ldro::Auto && sf >= 11 && bw_hz <= 125e3);
  const double t_sym = std::pow(2.0, sf) / bw_hz;
  const double t_preamble = (preamble_symbols + 4.25) * t_sym;
  const double num = 8.0 * payload_bytes - 4.0 * sf + 28.0 + 16.0 * (crc_on ? 1 : 0) -
                     20.0 * (explicit_header ? 0 : 1);
  const double extra = std::ceil(num / (4.0 * (sf - 2 * (de ? 1 : 0)))) * (coding_rate + 4);
  const double payload_symbols = 8.0 + std::fmax(extra, 0.0);
  return t_preamble + payload_symbols * t_sym;
}

inline double lora_time_on_air_s(const LoraScheme& s, int payload_bytes) {
  return lora_time_on_air_s(s.sf, s.bandwidth_hz, payload_bytes, s.coding_rate,
                            s.preamble_symbols, true, true, Ldro::Auto);
}

// ---------------------------------------------------------------------------
// LR-FHSS fragmentation
// ---------------------------------------------------------------------------

inline constexpr int kLrFhssMaxPayloadBytes = 58;
inline constexpr int kLrFhssFragmentPayloadBits = 48;

// Fragment count for a payload: the payload plus its 16-bit CRC is
// convolutionally coded at the configured rate and split into fragments of
// 48 coded bits (one 102.4 ms hop each).
inline int lrfhss_fragment_count(int payload_bytes, LrFhssCr cr) {
  if (payload_bytes < 1 || payload_bytes > kLrFhssMaxPayloadBytes)
    throw ConfigError("LR-FHSS payload must be 1.." + std::to_string(kLrFhssMaxPayloadBytes) +
                      " bytes, got " + std::to_string(payload_bytes));
  const int info_bits = (payload_bytes + 2) * 8;
  const int coded_bits =
      cr == LrFhssCr::Cr13 ? info_bits * 3 : (info_bits * 3 + 1) / 2;
  return (coded_bits + kLrFhssFragmentPayloadBits - 1) / kLrFhssFragmentPayloadBits;
}

// Fragments needed to decode: ceil(N_f / 3) at CR 1/3, ceil(2 N_f / 3) at CR 2/3.
inline int lrfhss_fragments_needed(int fragment_count, LrFhssCr cr) {
  if (fragment_count < 1) throw ConfigError("fragment count must be >= 1");
  const int num = cr == LrFhssCr::Cr13 ? 1 : 2;
  return (fragment_count * num + 2) / 3;
}

}  // namespace untn
