#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "untn/scenario.hpp"

namespace untn {

// ---------------------------------------------------------------------------
// Result tables
// ---------------------------------------------------------------------------
//
// Every emitter writes a '#'-prefixed schema version line, a fixed column
// header, and '\n' line endings with pinned decimal widths, so a rerun with
// the same configuration and seed reproduces the file byte for byte. A
// companion .meta file records the provenance of a result file: library
// version, seed, and every mode flag that shapes the numbers.

struct ResultRow {
  std::string scenario_id;
  std::string scheme;
  double bin_low_m = 0.0;
  double bin_high_m = 0.0;
  double elevation_deg = 0.0;
  double p_snr = 0.0;
  double p_sir = 0.0;
  double p_s = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  long long trials = 0;
};

inline constexpr const char* kResultsCsvVersion = "# untn results v1";
inline constexpr const char* kResultsCsvHeader =
    "scenario_id,scheme,bin_low_m,bin_high_m,elevation_deg,p_snr,p_sir,p_s,ci_low,ci_high,trials";

inline std::vector<ResultRow> result_rows(const ScenarioResult& r) {
  std::vector<ResultRow> rows;
  rows.reserve(r.schemes.size() * static_cast<std::size_t>(r.grid.count));
  for (const auto& s : r.schemes) {
    for (int bin = 0; bin < r.grid.count; ++bin) {
      const BinCounts& c = s.bins[static_cast<std::size_t>(bin)];
      ResultRow row;
      row.scenario_id = r.scenario_id;
      row.scheme = s.scheme;
      row.bin_low_m = r.grid.low(bin);
      row.bin_high_m = r.grid.high(bin);
      row.elevation_deg = elevation_from_slant_deg(r.footprint.altitude_m, r.grid.center(bin));
      row.p_snr = safe_ratio(c.snr_ok, c.trials);
      row.p_sir = safe_ratio(c.sir_ok, c.trials);
      row.p_s = safe_ratio(c.delivered, c.trials);
      const WilsonInterval ci = wilson_interval(static_cast<std::uint64_t>(c.delivered),
                                                static_cast<std::uint64_t>(c.trials));
      row.ci_low = ci.low;
      row.ci_high = ci.high;
      row.trials = c.trials;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

inline void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kResultsCsvVersion << "\n" << kResultsCsvHeader << "\n";
  char buf[224];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.3f,%.3f,%.3f,%.6f,%.6f,%.6f,%.6f,%.6f,%lld", r.bin_low_m,
                  r.bin_high_m, r.elevation_deg, r.p_snr, r.p_sir, r.p_s, r.ci_low, r.ci_high,
                  r.trials);
    out << r.scenario_id << "," << r.scheme << "," << buf << "\n";
  }
}

inline constexpr const char* kAnalyticalCsvVersion = "# untn analytical v1";
inline constexpr const char* kAnalyticalCsvHeader =
    "scenario_id,n_devices,bin_low_m,bin_high_m,elevation_deg,mass,zeta,p_fhss";

inline void write_analytical_csv(std::ostream& out,
                                 const std::vector<std::pair<double, AnalyticalResult>>& results) {
  out << kAnalyticalCsvVersion << "\n" << kAnalyticalCsvHeader << "\n";
  char buf[224];
  for (const auto& [n_devices, res] : results) {
    for (const auto& row : res.rows) {
      std::snprintf(buf, sizeof buf, "%.0f,%.3f,%.3f,%.3f,%.6f,%.6f,%.6f", n_devices,
                    row.bin_low_m, row.bin_high_m, row.elevation_deg, row.mass, row.zeta,
                    row.p_fhss);
      out << res.scenario_id << "," << buf << "\n";
    }
  }
}

inline constexpr const char* kSelectionCsvVersion = "# untn selection v1";
inline constexpr const char* kSelectionCsvHeader = "scenario_id,rank,scheme,p_s,airtime_s";

inline void write_selection_csv(std::ostream& out, const std::string& scenario_id,
                                const std::vector<SchemeScore>& ranked) {
  out << kSelectionCsvVersion << "\n" << kSelectionCsvHeader << "\n";
  char buf[128];
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%s,%.6f,%.6f", i + 1, ranked[i].scheme.c_str(),
                  ranked[i].p_s, ranked[i].airtime_s);
    out << scenario_id << "," << buf << "\n";
  }
}

inline std::string metadata_text(const ScenarioConfig& cfg,
                                 const std::vector<std::string>& extra = {}) {
  std::ostringstream out;
  char num[64];
  std::snprintf(num, sizeof num, "%.10g", cfg.n_devices);
  out << "version = " << kVersion << "\n";
  out << "scenario_id = " << cfg.scenario_id << "\n";
  out << "platform = " << to_string(cfg.platform) << "\n";
  out << "environment = " << to_string(cfg.environment) << "\n";
  out << "n_devices = " << num << "\n";
  out << "trials = " << cfg.run.trials << "\n";
  out << "seed = " << cfg.run.seed << "\n";
  out << "bins = " << cfg.run.bins << "\n";
  out << "los_mode = " << to_string(cfg.run.los_mode) << "\n";
  out << "shadow_fading = " << (cfg.run.shadow_fading ? "true" : "false") << "\n";
  out << "lora_capture = " << to_string(cfg.run.lora_capture) << "\n";
  out << "lrfhss_capture = " << to_string(cfg.run.lrfhss_capture) << "\n";
  out << "interference = " << to_string(cfg.run.interference) << "\n";
  for (const auto& line : extra) out << line << "\n";
  return out.str();
}

// Writes the table to `path` and its provenance to `path`.meta. Streams are
// opened in binary mode so the bytes are identical on every platform.
template <typename WriteBody>
inline void save_table(const std::string& path, const std::string& metadata, WriteBody&& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write output file: " + path);
  body(out);
  if (!out) throw ModelError("failed while writing output file: " + path);
  std::ofstream meta(path + ".meta", std::ios::binary);
  if (!meta) throw ConfigError("cannot write metadata file: " + path + ".meta");
  meta << metadata;
}

inline void save_results(const std::string& path, const std::vector<ResultRow>& rows,
                         const std::string& metadata) {
  save_table(path, metadata, [&](std::ostream& out) { write_results_csv(out, rows); });
}

}  // namespace untn
