#pragma once

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "untn/scenario.hpp"

namespace untn {

// ---------------------------------------------------------------------------
// Sectioned key-value configuration
// ---------------------------------------------------------------------------
//
// Configs are plain text grouped into [section] blocks of `key = value`
// lines. Unknown sections and unknown keys are rejected with the list of
// accepted names, every key read from a file is logged as an override, and
// an empty file reproduces the reference pipeline scenario of
// default_scenario(). Blank lines and lines starting with '#' or ';' are
// ignored. Key names carry their unit as a suffix.

namespace config_detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct SectionSpec {
  const char* name;
  std::vector<const char*> keys;
};

inline const std::vector<SectionSpec>& known_sections() {
  static const std::vector<SectionSpec> k = {
      {"platform", {"type", "altitude_m", "gateway_gain_dbi"}},
      {"environment", {"type", "tables_path"}},
      {"radio",
       {"frequency_hz", "tx_power_dbm", "device_gain_dbi", "noise_figure_db",
        "sir_threshold_db"}},
      {"lora",
       {"enabled", "spreading_factors", "bandwidth_hz", "channels", "coding_rate",
        "preamble_symbols", "frame_overhead_bytes"}},
      {"lrfhss",
       {"enabled", "obw_channels", "header_replicas", "coding_rate", "header_duration_s",
        "fragment_duration_s", "obw_bandwidth_hz"}},
      {"underground",
       {"multipath_margin_db", "gas_thickness_m", "gas_permittivity", "pipe_thickness_m",
        "pipe_permittivity", "pipe_alpha_np_per_m", "soil_thickness_m", "soil_permittivity",
        "soil_alpha_np_per_m", "asphalt_thickness_m", "asphalt_permittivity",
        "asphalt_alpha_np_per_m"}},
      {"soil",
       {"vwc_fraction", "clay_fraction", "sand_fraction", "bulk_density_g_cm3",
        "particle_density_g_cm3"}},
      {"traffic", {"period_s", "payload_bytes"}},
      {"deployment",
       {"n_devices", "mode", "area_km2", "density_per_km2", "min_elevation_deg"}},
      {"run",
       {"scenario_id", "trials", "seed", "bins", "los_mode", "shadow_fading", "lora_capture",
        "lrfhss_capture", "interference", "threads"}},
  };
  return k;
}

inline std::string join_names(const std::vector<const char*>& names) {
  std::string out;
  for (const char* n : names) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

inline const SectionSpec& section_spec(const std::string& name, int line_no) {
  for (const auto& s : known_sections())
    if (name == s.name) return s;
  std::string all;
  for (const auto& s : known_sections()) {
    if (!all.empty()) all += ", ";
    all += std::string("[") + s.name + "]";
  }
  throw ConfigError("config line " + std::to_string(line_no) + ": unknown section [" + name +
                    "]; expected one of " + all);
}

inline double to_double(const std::string& sec, const std::string& key, const std::string& raw) {
  char* end = nullptr;
  const double v = std::strtod(raw.c_str(), &end);
  if (end == raw.c_str() || *end != '\0')
    throw ConfigError("config [" + sec + "] " + key + ": expected a number, got '" + raw + "'");
  return v;
}

inline long long to_ll(const std::string& sec, const std::string& key, const std::string& raw) {
  char* end = nullptr;
  const long long v = std::strtoll(raw.c_str(), &end, 10);
  if (end == raw.c_str() || *end != '\0')
    throw ConfigError("config [" + sec + "] " + key + ": expected an integer, got '" + raw +
                      "'");
  return v;
}

inline int to_int(const std::string& sec, const std::string& key, const std::string& raw) {
  return static_cast<int>(to_ll(sec, key, raw));
}

inline std::uint64_t to_u64(const std::string& sec, const std::string& key,
                            const std::string& raw) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw.c_str(), &end, 10);
  if (end == raw.c_str() || *end != '\0' || raw.front() == '-')
    throw ConfigError("config [" + sec + "] " + key + ": expected a nonnegative integer, got '" +
                      raw + "'");
  return static_cast<std::uint64_t>(v);
}

inline bool to_bool(const std::string& sec, const std::string& key, const std::string& raw) {
  if (raw == "true") return true;
  if (raw == "false") return false;
  throw ConfigError("config [" + sec + "] " + key + ": expected true or false, got '" + raw +
                    "'");
}

inline std::vector<int> to_int_list(const std::string& sec, const std::string& key,
                                    const std::string& raw) {
  std::vector<int> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_int(sec, key, trim(item)));
  if (out.empty())
    throw ConfigError("config [" + sec + "] " + key +
                      ": expected a comma-separated integer list, got '" + raw + "'");
  return out;
}

// Shortest decimal string that parses back to exactly the same double.
inline std::string format_double(double v) {
  char buf[64];
  if (v == std::floor(v) && std::fabs(v) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
  }
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

struct RawConfig {
  std::map<std::string, std::string> values;  // "section.key" -> raw text, last wins

  const std::string* find(const std::string& section_key) const {
    const auto it = values.find(section_key);
    return it == values.end() ? nullptr : &it->second;
  }
};

inline RawConfig scan(const std::string& text, std::ostream& log) {
  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": malformed section header '" + t + "'");
      section = trim(t.substr(1, t.size() - 2));
      section_spec(section, line_no);
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value, got '" +
                        t + "'");
    if (section.empty())
      throw ConfigError("config line " + std::to_string(line_no) + ": key outside any [section]");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    const SectionSpec& spec = section_spec(section, line_no);
    const bool known =
        std::any_of(spec.keys.begin(), spec.keys.end(), [&](const char* k) { return key == k; });
    if (!known)
      throw ConfigError("config [" + section + "]: unknown key '" + key +
                        "'; known keys: " + join_names(spec.keys));
    log << "config override: [" << section << "] " << key << " = " << value << "\n";
    raw.values[section + "." + key] = value;
  }
  return raw;
}

inline int lora_coding_rate_from_string(const std::string& raw) {
  for (int cr = 1; cr <= 4; ++cr)
    if (raw == "4/" + std::to_string(4 + cr)) return cr;
  throw ConfigError("config [lora] coding_rate: expected one of 4/5, 4/6, 4/7, 4/8, got '" + raw +
                    "'");
}

inline LrFhssCr lrfhss_cr_from_string(const std::string& raw) {
  if (raw == "1/3") return LrFhssCr::Cr13;
  if (raw == "2/3") return LrFhssCr::Cr23;
  throw ConfigError("config [lrfhss] coding_rate: expected 1/3 or 2/3, got '" + raw + "'");
}

}  // namespace config_detail

// Parses a config from text. Values start from default_scenario(), each key
// present in the text overrides one field and is logged, and the assembled
// configuration is validated before it is returned.
inline ScenarioConfig parse_config_text(const std::string& text, std::ostream& log = std::clog) {
  using namespace config_detail;
  const RawConfig raw = scan(text, log);
  ScenarioConfig cfg = default_scenario();

  if (const auto* v = raw.find("platform.type")) cfg.platform = platform_from_string(*v);
  if (const auto* v = raw.find("deployment.n_devices"))
    cfg.n_devices = to_double("deployment", "n_devices", *v);
  apply_platform_defaults(cfg);
  if (const auto* v = raw.find("platform.altitude_m"))
    cfg.altitude_m = to_double("platform", "altitude_m", *v);
  if (const auto* v = raw.find("platform.gateway_gain_dbi"))
    cfg.gateway_gain_dbi = to_double("platform", "gateway_gain_dbi", *v);

  if (const auto* v = raw.find("environment.type")) cfg.environment = environment_from_string(*v);
  if (const auto* v = raw.find("environment.tables_path")) {
    cfg.tables = EnvTables::load(*v);
    cfg.tables_path = *v;
  }

  if (const auto* v = raw.find("radio.frequency_hz"))
    cfg.radio.freq_hz = to_double("radio", "frequency_hz", *v);
  if (const auto* v = raw.find("radio.tx_power_dbm"))
    cfg.radio.tx_power_dbm = to_double("radio", "tx_power_dbm", *v);
  if (const auto* v = raw.find("radio.device_gain_dbi"))
    cfg.radio.ud_gain_dbi = to_double("radio", "device_gain_dbi", *v);
  if (const auto* v = raw.find("radio.noise_figure_db"))
    cfg.radio.noise_figure_db = to_double("radio", "noise_figure_db", *v);
  if (const auto* v = raw.find("radio.sir_threshold_db"))
    cfg.radio.sir_threshold_db = to_double("radio", "sir_threshold_db", *v);
  cfg.soil.frequency_hz = cfg.radio.freq_hz;

  if (const auto* v = raw.find("soil.vwc_fraction"))
    cfg.soil.vwc_fraction = to_double("soil", "vwc_fraction", *v);
  if (const auto* v = raw.find("soil.clay_fraction"))
    cfg.soil.clay_fraction = to_double("soil", "clay_fraction", *v);
  if (const auto* v = raw.find("soil.sand_fraction"))
    cfg.soil.sand_fraction = to_double("soil", "sand_fraction", *v);
  if (const auto* v = raw.find("soil.bulk_density_g_cm3"))
    cfg.soil.bulk_density_g_cm3 = to_double("soil", "bulk_density_g_cm3", *v);
  if (const auto* v = raw.find("soil.particle_density_g_cm3"))
    cfg.soil.particle_density_g_cm3 = to_double("soil", "particle_density_g_cm3", *v);

  auto& layers = cfg.stack.layers;
  if (const auto* v = raw.find("underground.multipath_margin_db"))
    cfg.stack.multipath_margin_db = to_double("underground", "multipath_margin_db", *v);
  if (const auto* v = raw.find("underground.gas_thickness_m"))
    layers[0].thickness_m = to_double("underground", "gas_thickness_m", *v);
  if (const auto* v = raw.find("underground.gas_permittivity"))
    layers[0].rel_permittivity = to_double("underground", "gas_permittivity", *v);
  if (const auto* v = raw.find("underground.pipe_thickness_m"))
    layers[1].thickness_m = to_double("underground", "pipe_thickness_m", *v);
  if (const auto* v = raw.find("underground.pipe_permittivity"))
    layers[1].rel_permittivity = to_double("underground", "pipe_permittivity", *v);
  if (const auto* v = raw.find("underground.pipe_alpha_np_per_m"))
    layers[1].attenuation_np_per_m = to_double("underground", "pipe_alpha_np_per_m", *v);
  else
    layers[1].attenuation_np_per_m =
        attenuation_from_loss_tangent(layers[1].rel_permittivity, 0.005, cfg.radio.freq_hz);
  if (const auto* v = raw.find("underground.soil_thickness_m"))
    layers[2].thickness_m = to_double("underground", "soil_thickness_m", *v);
  if (const auto* v = raw.find("underground.soil_permittivity")) {
    if (*v == "auto") {
      cfg.soil_permittivity_auto = true;
    } else {
      cfg.soil_permittivity_auto = false;
      layers[2].rel_permittivity = to_double("underground", "soil_permittivity", *v);
    }
  }
  if (const auto* v = raw.find("underground.soil_alpha_np_per_m")) {
    if (*v == "auto") {
      cfg.soil_alpha_auto = true;
    } else {
      cfg.soil_alpha_auto = false;
      layers[2].attenuation_np_per_m = to_double("underground", "soil_alpha_np_per_m", *v);
    }
  }
  if (const auto* v = raw.find("underground.asphalt_thickness_m"))
    layers[3].thickness_m = to_double("underground", "asphalt_thickness_m", *v);
  if (const auto* v = raw.find("underground.asphalt_permittivity"))
    layers[3].rel_permittivity = to_double("underground", "asphalt_permittivity", *v);
  if (const auto* v = raw.find("underground.asphalt_alpha_np_per_m"))
    layers[3].attenuation_np_per_m = to_double("underground", "asphalt_alpha_np_per_m", *v);
  else
    layers[3].attenuation_np_per_m =
        attenuation_from_loss_tangent(layers[3].rel_permittivity, 0.05, cfg.radio.freq_hz);

  if (const auto* v = raw.find("traffic.period_s"))
    cfg.traffic.period_s = to_double("traffic", "period_s", *v);
  if (const auto* v = raw.find("traffic.payload_bytes"))
    cfg.traffic.payload_bytes = to_int("traffic", "payload_bytes", *v);

  if (const auto* v = raw.find("deployment.mode")) {
    if (*v == "disc_area")
      cfg.deployment.mode = DeploymentMode::DiscArea;
    else if (*v == "min_elevation")
      cfg.deployment.mode = DeploymentMode::MinElevation;
    else
      throw ConfigError("config [deployment] mode: expected disc_area or min_elevation, got '" +
                        *v + "'");
  }
  if (const auto* v = raw.find("deployment.area_km2"))
    cfg.deployment.area_km2 = to_double("deployment", "area_km2", *v);
  if (const auto* v = raw.find("deployment.density_per_km2")) {
    const double density = to_double("deployment", "density_per_km2", *v);
    if (density <= 0.0)
      throw ConfigError("config [deployment] density_per_km2 must be positive, got '" + *v + "'");
    if (raw.find("deployment.area_km2"))
      log << "config warning: [deployment] density_per_km2 takes precedence over area_km2\n";
    cfg.deployment.area_km2 = cfg.n_devices / density;
  }
  if (const auto* v = raw.find("deployment.min_elevation_deg"))
    cfg.deployment.min_elevation_deg = to_double("deployment", "min_elevation_deg", *v);

  if (const auto* v = raw.find("run.scenario_id")) {
    if (v->empty() || v->find(',') != std::string::npos)
      throw ConfigError("config [run] scenario_id must be nonempty and free of commas");
    cfg.scenario_id = *v;
  }
  if (const auto* v = raw.find("run.trials")) cfg.run.trials = to_ll("run", "trials", *v);
  if (const auto* v = raw.find("run.seed")) cfg.run.seed = to_u64("run", "seed", *v);
  if (const auto* v = raw.find("run.bins")) cfg.run.bins = to_int("run", "bins", *v);
  if (const auto* v = raw.find("run.los_mode")) cfg.run.los_mode = los_mode_from_string(*v);
  if (const auto* v = raw.find("run.shadow_fading"))
    cfg.run.shadow_fading = to_bool("run", "shadow_fading", *v);
  if (const auto* v = raw.find("run.lora_capture"))
    cfg.run.lora_capture = capture_model_from_string(*v);
  if (const auto* v = raw.find("run.lrfhss_capture"))
    cfg.run.lrfhss_capture = capture_model_from_string(*v);
  if (const auto* v = raw.find("run.interference"))
    cfg.run.interference = interference_mode_from_string(*v);
  if (const auto* v = raw.find("run.threads")) cfg.run.threads = to_int("run", "threads", *v);

  bool lora_enabled = true;
  bool fhss_enabled = true;
  std::vector<int> sfs = {7, 10, 12};
  if (const auto* v = raw.find("lora.enabled")) lora_enabled = to_bool("lora", "enabled", *v);
  if (const auto* v = raw.find("lora.spreading_factors"))
    sfs = to_int_list("lora", "spreading_factors", *v);
  std::optional<double> lora_bw;
  std::optional<int> lora_ch, lora_cr, lora_pre, lora_ovh;
  if (const auto* v = raw.find("lora.bandwidth_hz")) lora_bw = to_double("lora", "bandwidth_hz", *v);
  if (const auto* v = raw.find("lora.channels")) lora_ch = to_int("lora", "channels", *v);
  if (const auto* v = raw.find("lora.coding_rate")) lora_cr = lora_coding_rate_from_string(*v);
  if (const auto* v = raw.find("lora.preamble_symbols"))
    lora_pre = to_int("lora", "preamble_symbols", *v);
  if (const auto* v = raw.find("lora.frame_overhead_bytes"))
    lora_ovh = to_int("lora", "frame_overhead_bytes", *v);

  LrFhssScheme fhss = make_lrfhss();
  if (const auto* v = raw.find("lrfhss.enabled")) fhss_enabled = to_bool("lrfhss", "enabled", *v);
  if (const auto* v = raw.find("lrfhss.obw_channels"))
    fhss.obw_channels = to_int("lrfhss", "obw_channels", *v);
  if (const auto* v = raw.find("lrfhss.header_replicas"))
    fhss.header_replicas = to_int("lrfhss", "header_replicas", *v);
  if (const auto* v = raw.find("lrfhss.coding_rate")) fhss.cr = lrfhss_cr_from_string(*v);
  if (const auto* v = raw.find("lrfhss.header_duration_s"))
    fhss.t_header_s = to_double("lrfhss", "header_duration_s", *v);
  if (const auto* v = raw.find("lrfhss.fragment_duration_s"))
    fhss.t_fragment_s = to_double("lrfhss", "fragment_duration_s", *v);
  if (const auto* v = raw.find("lrfhss.obw_bandwidth_hz"))
    fhss.obw_bandwidth_hz = to_double("lrfhss", "obw_bandwidth_hz", *v);

  cfg.schemes.clear();
  if (lora_enabled) {
    for (int sf : sfs) {
      LoraScheme s = make_lora(sf);
      if (lora_bw) s.bandwidth_hz = *lora_bw;
      if (lora_ch) s.channels = *lora_ch;
      if (lora_cr) s.coding_rate = *lora_cr;
      if (lora_pre) s.preamble_symbols = *lora_pre;
      if (lora_ovh) s.frame_overhead_bytes = *lora_ovh;
      cfg.schemes.emplace_back(s);
    }
  }
  if (fhss_enabled) cfg.schemes.emplace_back(fhss);

  ScenarioConfig probe = cfg;
  resolve_scenario(probe);
  return cfg;
}

inline ScenarioConfig parse_config(const std::string& path, std::ostream& log = std::clog) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), log);
}

// Writes every section and key in canonical order. Parsing the emitted text
// reconstructs the same configuration, so emit + parse is a fixed point.
inline std::string emit_config(const ScenarioConfig& cfg) {
  using config_detail::format_double;
  std::ostringstream out;
  const auto d = [&](double v) { return format_double(v); };
  const auto b = [](bool v) { return v ? "true" : "false"; };

  out << "[platform]\n";
  out << "type = " << to_string(cfg.platform) << "\n";
  out << "altitude_m = " << d(cfg.altitude_m) << "\n";
  out << "gateway_gain_dbi = " << d(cfg.gateway_gain_dbi) << "\n";

  out << "\n[environment]\n";
  out << "type = " << to_string(cfg.environment) << "\n";
  if (!cfg.tables_path.empty()) out << "tables_path = " << cfg.tables_path << "\n";

  out << "\n[radio]\n";
  out << "frequency_hz = " << d(cfg.radio.freq_hz) << "\n";
  out << "tx_power_dbm = " << d(cfg.radio.tx_power_dbm) << "\n";
  out << "device_gain_dbi = " << d(cfg.radio.ud_gain_dbi) << "\n";
  out << "noise_figure_db = " << d(cfg.radio.noise_figure_db) << "\n";
  out << "sir_threshold_db = " << d(cfg.radio.sir_threshold_db) << "\n";

  const LoraScheme* lora = nullptr;
  const LrFhssScheme* fhss = nullptr;
  std::string sfs;
  for (const auto& s : cfg.schemes) {
    if (const auto* l = std::get_if<LoraScheme>(&s)) {
      if (!lora) lora = l;
      if (!sfs.empty()) sfs += ",";
      sfs += std::to_string(l->sf);
    } else if (!fhss) {
      fhss = &std::get<LrFhssScheme>(s);
    }
  }
  const LoraScheme lora_defaults;
  const LrFhssScheme fhss_defaults;
  if (!lora) lora = &lora_defaults;
  if (!fhss) fhss = &fhss_defaults;

  out << "\n[lora]\n";
  out << "enabled = " << b(!sfs.empty()) << "\n";
  out << "spreading_factors = " << (sfs.empty() ? "7,10,12" : sfs) << "\n";
  out << "bandwidth_hz = " << d(lora->bandwidth_hz) << "\n";
  out << "channels = " << lora->channels << "\n";
  out << "coding_rate = 4/" << 4 + lora->coding_rate << "\n";
  out << "preamble_symbols = " << lora->preamble_symbols << "\n";
  out << "frame_overhead_bytes = " << lora->frame_overhead_bytes << "\n";

  out << "\n[lrfhss]\n";
  out << "enabled = " << b(std::any_of(cfg.schemes.begin(), cfg.schemes.end(), [](const auto& s) {
    return std::holds_alternative<LrFhssScheme>(s);
  })) << "\n";
  out << "obw_channels = " << fhss->obw_channels << "\n";
  out << "header_replicas = " << fhss->header_replicas << "\n";
  out << "coding_rate = " << to_string(fhss->cr) << "\n";
  out << "header_duration_s = " << d(fhss->t_header_s) << "\n";
  out << "fragment_duration_s = " << d(fhss->t_fragment_s) << "\n";
  out << "obw_bandwidth_hz = " << d(fhss->obw_bandwidth_hz) << "\n";

  const auto& L = cfg.stack.layers;
  out << "\n[underground]\n";
  out << "multipath_margin_db = " << d(cfg.stack.multipath_margin_db) << "\n";
  out << "gas_thickness_m = " << d(L[0].thickness_m) << "\n";
  out << "gas_permittivity = " << d(L[0].rel_permittivity) << "\n";
  out << "pipe_thickness_m = " << d(L[1].thickness_m) << "\n";
  out << "pipe_permittivity = " << d(L[1].rel_permittivity) << "\n";
  out << "pipe_alpha_np_per_m = " << d(L[1].attenuation_np_per_m) << "\n";
  out << "soil_thickness_m = " << d(L[2].thickness_m) << "\n";
  out << "soil_permittivity = "
      << (cfg.soil_permittivity_auto ? "auto" : d(L[2].rel_permittivity)) << "\n";
  out << "soil_alpha_np_per_m = "
      << (cfg.soil_alpha_auto ? "auto" : d(L[2].attenuation_np_per_m)) << "\n";
  out << "asphalt_thickness_m = " << d(L[3].thickness_m) << "\n";
  out << "asphalt_permittivity = " << d(L[3].rel_permittivity) << "\n";
  out << "asphalt_alpha_np_per_m = " << d(L[3].attenuation_np_per_m) << "\n";

  out << "\n[soil]\n";
  out << "vwc_fraction = " << d(cfg.soil.vwc_fraction) << "\n";
  out << "clay_fraction = " << d(cfg.soil.clay_fraction) << "\n";
  out << "sand_fraction = " << d(cfg.soil.sand_fraction) << "\n";
  out << "bulk_density_g_cm3 = " << d(cfg.soil.bulk_density_g_cm3) << "\n";
  out << "particle_density_g_cm3 = " << d(cfg.soil.particle_density_g_cm3) << "\n";

  out << "\n[traffic]\n";
  out << "period_s = " << d(cfg.traffic.period_s) << "\n";
  out << "payload_bytes = " << cfg.traffic.payload_bytes << "\n";

  out << "\n[deployment]\n";
  out << "n_devices = " << d(cfg.n_devices) << "\n";
  out << "mode = " << to_string(cfg.deployment.mode) << "\n";
  out << "area_km2 = " << d(cfg.deployment.area_km2) << "\n";
  out << "min_elevation_deg = " << d(cfg.deployment.min_elevation_deg) << "\n";

  out << "\n[run]\n";
  out << "scenario_id = " << cfg.scenario_id << "\n";
  out << "trials = " << cfg.run.trials << "\n";
  out << "seed = " << cfg.run.seed << "\n";
  out << "bins = " << cfg.run.bins << "\n";
  out << "los_mode = " << to_string(cfg.run.los_mode) << "\n";
  out << "shadow_fading = " << b(cfg.run.shadow_fading) << "\n";
  out << "lora_capture = " << to_string(cfg.run.lora_capture) << "\n";
  out << "lrfhss_capture = " << to_string(cfg.run.lrfhss_capture) << "\n";
  out << "interference = " << to_string(cfg.run.interference) << "\n";
  out << "threads = " << cfg.run.threads << "\n";
  return out.str();
}

}  // namespace untn
