#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "untn/config.hpp"
#include "untn/csv.hpp"
#include "untn/presets.hpp"

namespace {

using namespace untn;

struct CommonFlags {
  std::optional<long long> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::string out;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--trials", f.trials, "Monte Carlo trials per scheme");
  cmd->add_option("--seed", f.seed, "base RNG seed");
  cmd->add_option("--mode", f.mode, "LOS handling: expected-db or sampled")
      ->check(CLI::IsMember({"expected-db", "sampled"}));
  cmd->add_option("--out", f.out, "output CSV path; a .meta companion is written next to it");
}

ScenarioConfig load_scenario(const std::string& config_arg, const CommonFlags& f) {
  ScenarioConfig cfg = parse_config_text(load_config_text(config_arg), std::clog);
  if (f.trials) {
    cfg.run.trials = *f.trials;
    std::clog << "cli override: trials = " << *f.trials << "\n";
  }
  if (f.seed) {
    cfg.run.seed = *f.seed;
    std::clog << "cli override: seed = " << *f.seed << "\n";
  }
  if (f.mode) {
    cfg.run.los_mode = los_mode_from_string(*f.mode);
    std::clog << "cli override: los_mode = " << *f.mode << "\n";
  }
  return cfg;
}

void print_scenario_header(const ScenarioConfig& cfg, const ScenarioResult& r) {
  char line[256];
  std::snprintf(line, sizeof line, "scenario %s: platform %s, environment %s, n = %.0f, trials = %lld",
                r.scenario_id.c_str(), to_string(cfg.platform), to_string(cfg.environment),
                cfg.n_devices, cfg.run.trials);
  std::cout << line << "\n";
  std::snprintf(line, sizeof line,
                "underground path loss %.2f dB, slant range [%.0f, %.0f] m, %d bins",
                r.pl_underground_db, r.grid.low(0), r.grid.high(r.grid.count - 1), r.grid.count);
  std::cout << line << "\n";
}

void print_scheme_table(const ScenarioResult& r) {
  std::cout << "scheme      airtime_s   p_snr     p_sir     p_s       ci95\n";
  char line[256];
  for (const auto& s : r.schemes) {
    const WilsonInterval ci = wilson_interval(static_cast<std::uint64_t>(s.total.delivered),
                                              static_cast<std::uint64_t>(s.total.trials));
    std::snprintf(line, sizeof line, "%-10s  %-10.6f  %-8.4f  %-8.4f  %-8.4f  [%.4f, %.4f]",
                  s.scheme.c_str(), s.airtime_s, s.p_snr(), s.p_sir(), s.p_s(), ci.low, ci.high);
    std::cout << line << "\n";
  }
}

int run_simulate(const std::string& config_arg, const CommonFlags& f) {
  const ScenarioConfig cfg = load_scenario(config_arg, f);
  const ScenarioResult result = run_scenario(cfg);
  print_scenario_header(cfg, result);
  print_scheme_table(result);
  if (!f.out.empty()) {
    save_results(f.out, result_rows(result), metadata_text(cfg));
    std::cout << "wrote " << f.out << " and " << f.out << ".meta\n";
  }
  return 0;
}

int run_sweep(const std::string& config_arg, const CommonFlags& f, const std::string& param_name,
              const std::vector<std::string>& values) {
  const ScenarioConfig cfg = load_scenario(config_arg, f);
  const SweepParameter param = parse_sweep_parameter(param_name);
  const std::vector<SweepPoint> points = sweep(cfg, param, values);
  std::vector<ResultRow> rows;
  std::vector<std::string> extra = {std::string("sweep_parameter = ") + to_string(param)};
  for (const auto& point : points) {
    if (!point.ok) {
      std::cerr << "sweep point " << param_name << "=" << point.value << " failed: " << point.error
                << "\n";
      extra.push_back("sweep_error " + point.value + " = " + point.error);
      continue;
    }
    std::cout << param_name << "=" << point.value << ":";
    char cell[96];
    for (const auto& s : point.result.schemes) {
      std::snprintf(cell, sizeof cell, " %s %.4f", s.scheme.c_str(), s.p_s());
      std::cout << cell;
    }
    std::cout << "\n";
    const std::vector<ResultRow> point_rows = result_rows(point.result);
    rows.insert(rows.end(), point_rows.begin(), point_rows.end());
  }
  if (!points.empty() && rows.empty()) throw ConfigError("every sweep point failed");
  if (!f.out.empty()) {
    save_results(f.out, rows, metadata_text(cfg, extra));
    std::cout << "wrote " << f.out << " and " << f.out << ".meta\n";
  }
  return 0;
}

int run_analytical(const std::string& config_arg, const CommonFlags& f,
                   const std::string& param_name, const std::vector<std::string>& values) {
  const ScenarioConfig cfg = load_scenario(config_arg, f);
  std::vector<std::pair<double, AnalyticalResult>> results;
  std::vector<std::string> extra;
  if (values.empty()) {
    results.emplace_back(cfg.n_devices, analytical_fhss(cfg));
  } else {
    const SweepParameter param = parse_sweep_parameter(param_name);
    for (const auto& v : values) {
      ScenarioConfig point = apply_sweep_value(cfg, param, v);
      point.scenario_id = cfg.scenario_id + "/" + param_name + "=" + v;
      results.emplace_back(point.n_devices, analytical_fhss(point));
    }
  }
  char line[192];
  for (const auto& [n, res] : results) {
    std::snprintf(line, sizeof line, "%s: a_h = %.6f, a_f = %.6f, p_fhss_avg = %.6f",
                  res.scenario_id.c_str(), res.a_h, res.a_f, res.p_avg);
    std::cout << line << "\n";
    std::snprintf(line, sizeof line, "p_fhss_avg %s = %.6f", res.scenario_id.c_str(), res.p_avg);
    extra.push_back(line);
  }
  if (!f.out.empty()) {
    save_table(f.out, metadata_text(cfg, extra),
               [&](std::ostream& out) { write_analytical_csv(out, results); });
    std::cout << "wrote " << f.out << " and " << f.out << ".meta\n";
  }
  return 0;
}

int run_select(const std::string& config_arg, const CommonFlags& f) {
  const ScenarioConfig cfg = load_scenario(config_arg, f);
  const std::vector<SchemeScore> ranked = select_best_modulation(cfg);
  char line[160];
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    std::snprintf(line, sizeof line, "%zu. %-10s  p_s = %.4f  airtime = %.6f s", i + 1,
                  ranked[i].scheme.c_str(), ranked[i].p_s, ranked[i].airtime_s);
    std::cout << line << "\n";
  }
  std::cout << "best: " << ranked.front().scheme << "\n";
  if (!f.out.empty()) {
    save_table(f.out, metadata_text(cfg),
               [&](std::ostream& out) { write_selection_csv(out, cfg.scenario_id, ranked); });
    std::cout << "wrote " << f.out << " and " << f.out << ".meta\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uplink success of buried sensors through LoRa and LR-FHSS NTN gateways"};
  app.require_subcommand(1);

  std::string config_arg;
  std::string param_name;
  std::vector<std::string> values;
  CommonFlags flags;

  CLI::App* simulate = app.add_subcommand("simulate", "run the Monte Carlo scenario of a config");
  simulate->add_option("config", config_arg, "config file or preset name")->required();
  add_common_flags(simulate, flags);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "rerun a config while varying one parameter");
  sweep_cmd->add_option("config", config_arg, "config file or preset name")->required();
  sweep_cmd->add_option("--param", param_name, "n_devices, burial_depth, vwc, environment or elevation")
      ->required();
  sweep_cmd->add_option("--values", values, "comma-separated parameter values")
      ->required()
      ->delimiter(',');
  add_common_flags(sweep_cmd, flags);

  CLI::App* analytical = app.add_subcommand("analytical", "closed-form LR-FHSS success model");
  analytical->add_option("config", config_arg, "config file or preset name")->required();
  analytical->add_option("--param", param_name, "optional sweep parameter");
  analytical->add_option("--values", values, "comma-separated parameter values")->delimiter(',');
  add_common_flags(analytical, flags);

  CLI::App* select = app.add_subcommand("select", "rank the configured schemes by delivery rate");
  select->add_option("config", config_arg, "config file or preset name")->required();
  add_common_flags(select, flags);

  CLI::App* presets = app.add_subcommand("presets", "shipped scenario presets");
  presets->require_subcommand(1);
  presets->add_subcommand("list", "list preset names and descriptions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (simulate->parsed()) return run_simulate(config_arg, flags);
    if (sweep_cmd->parsed()) return run_sweep(config_arg, flags, param_name, values);
    if (analytical->parsed()) {
      if (!values.empty() && param_name.empty())
        throw ConfigError("analytical --values needs --param");
      return run_analytical(config_arg, flags, param_name, values);
    }
    if (select->parsed()) return run_select(config_arg, flags);
    if (presets->parsed()) {
      for (const auto& p : preset_catalog()) {
        char line[160];
        std::snprintf(line, sizeof line, "%-18s %s", p.name, p.description);
        std::cout << line << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
