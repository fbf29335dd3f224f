#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "untn/config.hpp"
#include "untn/csv.hpp"
#include "untn/presets.hpp"

// Covered tests:
// - an empty config reproduces the built-in defaults
// - parse -> emit -> parse is a fixed point for the defaults and all presets
// - embedded preset text matches the shipped presets/ files byte for byte
// - platform defaults cascade and explicit keys override them
// - config rejection messages: sections, keys, value types, scenario ids,
//   coding rates, deployment modes
// - density takes precedence over area with a logged warning
// - soil auto markers survive a round trip, pinned values stay pinned
// - scheme toggles: lora/lrfhss enable flags and the spreading factor list
// - external environment tables load and round-trip through tables_path
// - config resolution order: file first, then preset catalog, suffix optional
// - result rows: one row per scheme and bin, Wilson bounds bracket p_s
// - results CSV byte-for-byte golden and rerun stability
// - metadata text: version, flags, extra lines, no timestamps
// - save_results writes the table and its .meta companion
// - CLI process checks: usage errors exit 2, runtime errors exit 1 with a
//   message on stderr, presets list, simulate with overrides and stable
//   output bytes, thread-count invariance, sweep point errors and the
//   all-points-failed error, analytical table output, select ranking output

using namespace untn;
using Catch::Matchers::ContainsSubstring;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(UNTN_CLI_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[512];
  while (std::fgets(buf, sizeof buf, pipe) != nullptr) r.output += buf;
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const std::string& scratch_dir() {
  static const std::string dir = [] {
    char tmpl[] = "/tmp/untn_cli_io_XXXXXX";
    const char* d = mkdtemp(tmpl);
    REQUIRE(d != nullptr);
    return std::string(d);
  }();
  return dir;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << text;
}

ScenarioConfig parse_quiet(const std::string& text) {
  std::ostringstream log;
  return parse_config_text(text, log);
}

long long count_lines(const std::string& text) {
  long long n = 0;
  for (const char c : text) n += c == '\n' ? 1 : 0;
  return n;
}

std::string tiny_config_path() {
  static const std::string path = [] {
    const std::string p = scratch_dir() + "/cli_check.cfg";
    write_file(p,
               "[deployment]\n"
               "n_devices = 300\n"
               "\n"
               "[run]\n"
               "scenario_id = cli_check\n"
               "trials = 50\n"
               "bins = 4\n");
    return p;
  }();
  return path;
}

}  // namespace

TEST_CASE("empty config reproduces the defaults") {
  const ScenarioConfig cfg = parse_quiet("");
  const ScenarioConfig def = default_scenario();
  REQUIRE(cfg.platform == def.platform);
  REQUIRE(cfg.altitude_m == def.altitude_m);
  REQUIRE(cfg.environment == def.environment);
  REQUIRE(cfg.n_devices == def.n_devices);
  REQUIRE(cfg.schemes.size() == 4);
  REQUIRE(cfg.run.trials == def.run.trials);
  REQUIRE(cfg.run.seed == def.run.seed);
  REQUIRE(cfg.soil_alpha_auto);
  REQUIRE_FALSE(cfg.soil_permittivity_auto);
  REQUIRE(emit_config(cfg) == emit_config(def));
}

TEST_CASE("parse and emit reach a fixed point") {
  std::vector<std::string> sources = {""};
  for (const auto& p : preset_catalog()) sources.emplace_back(p.text);
  for (const auto& text : sources) {
    const ScenarioConfig first = parse_quiet(text);
    const std::string s1 = emit_config(first);
    const ScenarioConfig second = parse_quiet(s1);
    const std::string s2 = emit_config(second);
    REQUIRE(s1 == s2);
  }
}

TEST_CASE("shipped preset files match the embedded text") {
  for (const auto& p : preset_catalog()) {
    const std::string path =
        std::string(UNTN_SOURCE_DIR) + "/presets/" + p.name + ".preset";
    REQUIRE(read_file(path) == p.text);
  }
}

TEST_CASE("platform defaults cascade in the parser") {
  const ScenarioConfig hap = parse_quiet("[platform]\ntype = hap\n");
  REQUIRE(hap.platform == Platform::Hap);
  REQUIRE(hap.altitude_m == 20e3);
  REQUIRE(hap.gateway_gain_dbi == 17.0);
  REQUIRE(hap.deployment.mode == DeploymentMode::MinElevation);

  const ScenarioConfig low = parse_quiet(
      "[platform]\n"
      "type = hap\n"
      "altitude_m = 18000\n"
      "gateway_gain_dbi = 12\n");
  REQUIRE(low.altitude_m == 18000.0);
  REQUIRE(low.gateway_gain_dbi == 12.0);

  const ScenarioConfig uav = parse_quiet("[deployment]\nn_devices = 12000\n");
  REQUIRE(uav.platform == Platform::Uav);
  REQUIRE(uav.n_devices == 12000.0);
  REQUIRE(uav.deployment.mode == DeploymentMode::DiscArea);
  REQUIRE(uav.deployment.area_km2 == 1.0);
}

TEST_CASE("config rejection messages") {
  REQUIRE_THROWS_WITH(
      parse_quiet("[foo]\n"),
      "config line 1: unknown section [foo]; expected one of [platform], [environment], "
      "[radio], [lora], [lrfhss], [underground], [soil], [traffic], [deployment], [run]");
  REQUIRE_THROWS_WITH(parse_quiet("[run]\ntrails = 5\n"),
                      "config [run]: unknown key 'trails'; known keys: scenario_id, trials, "
                      "seed, bins, los_mode, shadow_fading, lora_capture, lrfhss_capture, "
                      "interference, threads");
  REQUIRE_THROWS_WITH(parse_quiet("[run]\ntrials = ten\n"),
                      "config [run] trials: expected an integer, got 'ten'");
  REQUIRE_THROWS_WITH(parse_quiet("[run]\nseed = -1\n"),
                      "config [run] seed: expected a nonnegative integer, got '-1'");
  REQUIRE_THROWS_WITH(parse_quiet("[run]\nshadow_fading = yes\n"),
                      "config [run] shadow_fading: expected true or false, got 'yes'");
  REQUIRE_THROWS_WITH(parse_quiet("[radio]\ntx_power_dbm = loud\n"),
                      "config [radio] tx_power_dbm: expected a number, got 'loud'");
  REQUIRE_THROWS_WITH(parse_quiet("[run\ntrials = 5\n"),
                      "config line 1: malformed section header '[run'");
  REQUIRE_THROWS_WITH(parse_quiet("trials = 5\n"), "config line 1: key outside any [section]");
  REQUIRE_THROWS_WITH(parse_quiet("[run]\ntrials 5\n"),
                      "config line 2: expected key = value, got 'trials 5'");
  REQUIRE_THROWS_WITH(parse_quiet("[run]\nscenario_id = a,b\n"),
                      "config [run] scenario_id must be nonempty and free of commas");
  REQUIRE_THROWS_WITH(
      parse_quiet("[deployment]\nmode = ring\n"),
      "config [deployment] mode: expected disc_area or min_elevation, got 'ring'");
  REQUIRE_THROWS_WITH(parse_quiet("[lora]\ncoding_rate = 4/9\n"),
                      "config [lora] coding_rate: expected one of 4/5, 4/6, 4/7, 4/8, got '4/9'");
  REQUIRE_THROWS_WITH(parse_quiet("[lrfhss]\ncoding_rate = 3/3\n"),
                      "config [lrfhss] coding_rate: expected 1/3 or 2/3, got '3/3'");
  REQUIRE_THROWS_WITH(parse_quiet("[lora]\nspreading_factors = 7,x\n"),
                      "config [lora] spreading_factors: expected an integer, got 'x'");
  REQUIRE_THROWS_WITH(parse_quiet("[deployment]\ndensity_per_km2 = 0\n"),
                      "config [deployment] density_per_km2 must be positive, got '0'");
}

TEST_CASE("overrides are logged and density beats area") {
  std::ostringstream log;
  const ScenarioConfig cfg = parse_config_text(
      "[run]\n"
      "trials = 77\n"
      "\n"
      "[platform]\n"
      "type = hap\n"
      "\n"
      "[deployment]\n"
      "n_devices = 26000\n"
      "area_km2 = 5\n"
      "density_per_km2 = 1.3\n",
      log);
  REQUIRE(cfg.run.trials == 77);
  REQUIRE_THAT(log.str(), ContainsSubstring("config override: [run] trials = 77"));
  REQUIRE_THAT(log.str(), ContainsSubstring(
      "config warning: [deployment] density_per_km2 takes precedence over area_km2"));
  REQUIRE(cfg.deployment.area_km2 == 26000.0 / 1.3);
}

TEST_CASE("soil auto markers round-trip") {
  const std::string emitted = emit_config(default_scenario());
  REQUIRE_THAT(emitted, ContainsSubstring("soil_permittivity = 5.8"));
  REQUIRE_THAT(emitted, ContainsSubstring("soil_alpha_np_per_m = auto"));

  const ScenarioConfig pinned = parse_quiet(
      "[underground]\n"
      "soil_alpha_np_per_m = 1.5\n"
      "soil_permittivity = auto\n");
  REQUIRE_FALSE(pinned.soil_alpha_auto);
  REQUIRE(pinned.soil_permittivity_auto);
  REQUIRE(pinned.stack.layers[2].attenuation_np_per_m == 1.5);
  const std::string text = emit_config(pinned);
  REQUIRE_THAT(text, ContainsSubstring("soil_alpha_np_per_m = 1.5"));
  REQUIRE_THAT(text, ContainsSubstring("soil_permittivity = auto"));

  ScenarioConfig resolved = pinned;
  resolve_scenario(resolved);
  REQUIRE(resolved.stack.layers[2].attenuation_np_per_m == 1.5);  // stays pinned
}

TEST_CASE("scheme toggles") {
  const ScenarioConfig no_lora = parse_quiet("[lora]\nenabled = false\n");
  REQUIRE(no_lora.schemes.size() == 1);
  REQUIRE(std::holds_alternative<LrFhssScheme>(no_lora.schemes[0]));

  const ScenarioConfig no_fhss = parse_quiet("[lrfhss]\nenabled = false\n");
  REQUIRE(no_fhss.schemes.size() == 3);

  REQUIRE_THROWS_WITH(parse_quiet("[lora]\nenabled = false\n\n[lrfhss]\nenabled = false\n"),
                      "at least one modulation scheme is required");

  const ScenarioConfig single = parse_quiet("[lora]\nspreading_factors = 10\n");
  REQUIRE(single.schemes.size() == 2);
  REQUIRE(std::get<LoraScheme>(single.schemes[0]).sf == 10);

  const ScenarioConfig tuned = parse_quiet(
      "[lrfhss]\n"
      "obw_channels = 560\n"
      "coding_rate = 2/3\n");
  const auto& fhss = std::get<LrFhssScheme>(tuned.schemes.back());
  REQUIRE(fhss.obw_channels == 560);
  REQUIRE(fhss.cr == LrFhssCr::Cr23);
}

TEST_CASE("environment tables path round-trips") {
  const std::string path = scratch_dir() + "/tables.txt";
  write_file(path, read_file(std::string(UNTN_SOURCE_DIR) + "/data/ntn_env_tables.txt"));
  const ScenarioConfig cfg = parse_quiet("[environment]\ntables_path = " + path + "\n");
  REQUIRE(cfg.tables_path == path);
  REQUIRE(cfg.tables.at(Environment::Rural, 50.0).p_los ==
          EnvTables::builtin().at(Environment::Rural, 50.0).p_los);
  const std::string emitted = emit_config(cfg);
  REQUIRE_THAT(emitted, ContainsSubstring("tables_path = " + path));
  REQUIRE(emit_config(parse_quiet(emitted)) == emitted);
}

TEST_CASE("config arguments resolve file first then preset") {
  const std::string path = scratch_dir() + "/fig5_rural.preset";
  write_file(path, "[run]\nscenario_id = shadowing_file\n");
  std::ostringstream log;
  REQUIRE(parse_config_text(load_config_text(path), log).scenario_id == "shadowing_file");

  REQUIRE(load_config_text("fig5_rural") == preset_catalog()[1].text);
  REQUIRE(load_config_text("fig5_rural.preset") == preset_catalog()[1].text);
  REQUIRE(load_config_text("somewhere/else/fig5_rural.preset") == preset_catalog()[1].text);

  REQUIRE_THROWS_WITH(load_config_text("nope"),
                      "cannot open config file: nope (and it does not name a preset; see "
                      "`presets list`)");
}

TEST_CASE("result rows cover every scheme and bin") {
  ScenarioConfig cfg = default_scenario();
  cfg.n_devices = 400.0;
  cfg.run.trials = 200;
  cfg.run.bins = 5;
  const ScenarioResult result = run_scenario(cfg);
  const std::vector<ResultRow> rows = result_rows(result);
  REQUIRE(rows.size() == 20);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ResultRow& row = rows[i];
    REQUIRE(row.scheme == result.schemes[i / 5].scheme);
    REQUIRE(row.bin_high_m > row.bin_low_m);
    REQUIRE(row.ci_low <= row.p_s + 1e-12);
    REQUIRE(row.ci_high >= row.p_s - 1e-12);
    REQUIRE(row.elevation_deg >= result.footprint.rim_elevation_deg - 0.1);
    REQUIRE(row.elevation_deg <= 90.0);
  }
  long long trials = 0;
  for (std::size_t i = 0; i < 5; ++i) trials += rows[i].trials;
  REQUIRE(trials == 200);
}

TEST_CASE("results csv matches the golden bytes") {
  ScenarioConfig cfg = default_scenario();
  cfg.scenario_id = "golden_small";
  cfg.n_devices = 40000.0;
  cfg.stack.layers[2].thickness_m = 0.9;
  cfg.run.trials = 150;
  cfg.run.bins = 4;
  cfg.run.seed = 3;
  const ScenarioResult result = run_scenario(cfg);
  std::ostringstream out;
  write_results_csv(out, result_rows(result));
  REQUIRE(out.str() == read_file(std::string(UNTN_SOURCE_DIR) +
                                 "/tests/golden/results_small.csv"));
}

TEST_CASE("metadata text is deterministic and complete") {
  ScenarioConfig cfg = default_scenario();
  const std::string meta = metadata_text(cfg, {"note = check"});
  REQUIRE_THAT(meta, ContainsSubstring("version = 0.1.0\n"));
  REQUIRE_THAT(meta, ContainsSubstring("scenario_id = scenario\n"));
  REQUIRE_THAT(meta, ContainsSubstring("platform = uav\n"));
  REQUIRE_THAT(meta, ContainsSubstring("environment = rural\n"));
  REQUIRE_THAT(meta, ContainsSubstring("n_devices = 50000\n"));
  REQUIRE_THAT(meta, ContainsSubstring("trials = 10000\n"));
  REQUIRE_THAT(meta, ContainsSubstring("seed = 1\n"));
  REQUIRE_THAT(meta, ContainsSubstring("los_mode = expected-db\n"));
  REQUIRE_THAT(meta, ContainsSubstring("shadow_fading = true\n"));
  REQUIRE_THAT(meta, ContainsSubstring("lora_capture = off\n"));
  REQUIRE_THAT(meta, ContainsSubstring("lrfhss_capture = sir\n"));
  REQUIRE_THAT(meta, ContainsSubstring("interference = poisson\n"));
  REQUIRE_THAT(meta, ContainsSubstring("note = check\n"));
  REQUIRE(meta == metadata_text(cfg, {"note = check"}));
}

TEST_CASE("save_results writes the table and companion") {
  ScenarioConfig cfg = default_scenario();
  cfg.n_devices = 100.0;
  cfg.run.trials = 40;
  cfg.run.bins = 2;
  const ScenarioResult result = run_scenario(cfg);
  const std::string path = scratch_dir() + "/out.csv";
  save_results(path, result_rows(result), metadata_text(cfg));
  const std::string table = read_file(path);
  REQUIRE(table.rfind("# untn results v1\n", 0) == 0);
  REQUIRE(count_lines(table) == 2 + 4 * 2);
  REQUIRE_THAT(read_file(path + ".meta"), ContainsSubstring("version = 0.1.0"));

  REQUIRE_THROWS_WITH(save_results("/nonexistent_dir/x.csv", result_rows(result), "m"),
                      "cannot write output file: /nonexistent_dir/x.csv");
}

TEST_CASE("cli usage errors exit with 2") {
  REQUIRE(run_cli("").exit_code == 2);
  REQUIRE(run_cli("frobnicate").exit_code == 2);
  REQUIRE(run_cli("simulate").exit_code == 2);  // missing config argument
  REQUIRE(run_cli("sweep " + tiny_config_path() + " --values 1,2").exit_code == 2);
  REQUIRE(run_cli("simulate " + tiny_config_path() + " --mode bogus").exit_code == 2);
  const RunResult help = run_cli("--help");
  REQUIRE(help.exit_code == 0);
  REQUIRE_THAT(help.output, ContainsSubstring("simulate"));
}

TEST_CASE("cli presets list") {
  const RunResult r = run_cli("presets list");
  REQUIRE(r.exit_code == 0);
  for (const auto& p : preset_catalog()) {
    REQUIRE_THAT(r.output, ContainsSubstring(p.name));
    REQUIRE_THAT(r.output, ContainsSubstring(p.description));
  }
}

TEST_CASE("cli simulate produces stable files") {
  const std::string out = scratch_dir() + "/sim.csv";
  const std::string cmd =
      "simulate " + tiny_config_path() + " --trials 60 --seed 9 --out " + out;
  const RunResult r = run_cli(cmd);
  REQUIRE(r.exit_code == 0);
  REQUIRE_THAT(r.output, ContainsSubstring("scenario cli_check:"));
  REQUIRE_THAT(r.output, ContainsSubstring("cli override: trials = 60"));
  REQUIRE_THAT(r.output, ContainsSubstring("wrote " + out));
  const std::string first = read_file(out);
  REQUIRE(first.rfind("# untn results v1\n", 0) == 0);
  REQUIRE(count_lines(first) == 2 + 4 * 4);

  REQUIRE(run_cli(cmd).exit_code == 0);
  REQUIRE(read_file(out) == first);

  const std::string threaded = scratch_dir() + "/sim_threaded.csv";
  const RunResult t = run_cli("simulate " + tiny_config_path() + " --trials 60 --seed 9 " +
                              "--out " + threaded);
  REQUIRE(t.exit_code == 0);
  setenv("UNTN_THREADS", "5", 1);
  const RunResult u = run_cli("simulate " + tiny_config_path() + " --trials 60 --seed 9 " +
                              "--out " + threaded);
  unsetenv("UNTN_THREADS");
  REQUIRE(u.exit_code == 0);
  REQUIRE(read_file(threaded) == first);
}

TEST_CASE("cli simulate resolves presets") {
  const std::string out = scratch_dir() + "/table4.csv";
  const RunResult r =
      run_cli("simulate table4_pipeline --trials 40 --seed 7 --out " + out);
  REQUIRE(r.exit_code == 0);
  REQUIRE_THAT(r.output, ContainsSubstring("platform leo"));
  REQUIRE(count_lines(read_file(out)) == 2 + 4 * 20);
  REQUIRE_THAT(read_file(out + ".meta"), ContainsSubstring("platform = leo"));
  REQUIRE_THAT(read_file(out + ".meta"), ContainsSubstring("los_mode = sampled"));
}

TEST_CASE("cli runtime errors exit with 1") {
  const RunResult missing = run_cli("simulate nope");
  REQUIRE(missing.exit_code == 1);
  REQUIRE_THAT(missing.output, ContainsSubstring("error: cannot open config file: nope"));

  const RunResult no_trials = run_cli("simulate " + tiny_config_path() + " --trials 0");
  REQUIRE(no_trials.exit_code == 1);
  REQUIRE_THAT(no_trials.output, ContainsSubstring("error: run trials must be >= 1"));

  const RunResult orphan_values =
      run_cli("analytical " + tiny_config_path() + " --values 1,2");
  REQUIRE(orphan_values.exit_code == 1);
  REQUIRE_THAT(orphan_values.output, ContainsSubstring("error: analytical --values needs --param"));
}

TEST_CASE("cli sweep reports point errors") {
  const RunResult r = run_cli("sweep fig5_rural --param vwc --values 0.1,0.2 --trials 10");
  REQUIRE(r.exit_code == 1);
  REQUIRE_THAT(r.output, ContainsSubstring("sweep point vwc=0.1 failed"));
  REQUIRE_THAT(r.output, ContainsSubstring("vwc sweep needs soil alpha in auto mode"));
  REQUIRE_THAT(r.output, ContainsSubstring("error: every sweep point failed"));

  const std::string out = scratch_dir() + "/sweep.csv";
  const RunResult ok = run_cli("sweep " + tiny_config_path() +
                               " --param n_devices --values 2000,4000 --trials 40 --out " + out);
  REQUIRE(ok.exit_code == 0);
  REQUIRE_THAT(ok.output, ContainsSubstring("n_devices=2000:"));
  REQUIRE_THAT(ok.output, ContainsSubstring("n_devices=4000:"));
  const std::string table = read_file(out);
  REQUIRE_THAT(table, ContainsSubstring("cli_check/n_devices=2000"));
  REQUIRE_THAT(table, ContainsSubstring("cli_check/n_devices=4000"));
  REQUIRE_THAT(read_file(out + ".meta"), ContainsSubstring("sweep_parameter = n_devices"));
}

TEST_CASE("cli analytical writes the closed-form table") {
  const std::string out = scratch_dir() + "/analytical.csv";
  const RunResult r = run_cli("analytical fig7_density --out " + out);
  REQUIRE(r.exit_code == 0);
  REQUIRE_THAT(r.output, ContainsSubstring("a_h = "));
  REQUIRE_THAT(r.output, ContainsSubstring("p_fhss_avg"));
  const std::string table = read_file(out);
  REQUIRE(table.rfind("# untn analytical v1\n", 0) == 0);
  REQUIRE(count_lines(table) == 2 + 20);

  const RunResult swept = run_cli(
      "analytical fig7_density --param n_devices --values 10000,50000");
  REQUIRE(swept.exit_code == 0);
  REQUIRE_THAT(swept.output, ContainsSubstring("fig7_density/n_devices=10000"));
  REQUIRE_THAT(swept.output, ContainsSubstring("fig7_density/n_devices=50000"));
}

TEST_CASE("cli select ranks the schemes") {
  const RunResult r = run_cli("select " + tiny_config_path() + " --trials 40");
  REQUIRE(r.exit_code == 0);
  REQUIRE_THAT(r.output, ContainsSubstring("1. "));
  REQUIRE_THAT(r.output, ContainsSubstring("best: "));

  const std::string out = scratch_dir() + "/select.csv";
  REQUIRE(run_cli("select " + tiny_config_path() + " --trials 40 --out " + out).exit_code == 0);
  REQUIRE(read_file(out).rfind("# untn selection v1\n", 0) == 0);
  REQUIRE(count_lines(read_file(out)) == 2 + 4);
}

TEST_CASE("cli mode override is applied and logged") {
  const RunResult r =
      run_cli("simulate fig6_environments --trials 5 --mode expected-db");
  REQUIRE(r.exit_code == 0);
  REQUIRE_THAT(r.output, ContainsSubstring("cli override: los_mode = expected-db"));
}
