#pragma once

#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "untn/common.hpp"

namespace untn {

// ---------------------------------------------------------------------------
// Shipped scenario presets
// ---------------------------------------------------------------------------
//
// Each preset is a small config delta on top of the built-in defaults. The
// canonical text is embedded here so a preset can be resolved by name from
// any working directory; the presets/ directory ships the same bytes for
// reading and editing. Soil attenuation is pinned where a preset reproduces
// a fixed reference deployment and left on auto where the preset exists to
// drive soil-parameter sweeps.

struct PresetInfo {
  const char* name;
  const char* description;
  const char* text;
};

namespace preset_detail {

inline constexpr const char* kTable4Pipeline = R"(# Reference buried-pipeline deployment observed from a 550 km LEO
# satellite: rural morphology, 433 MHz, 50000 devices reporting every
# 600 s through the four-layer underground stack.
[platform]
type = leo

[underground]
soil_permittivity = 5.8
soil_alpha_np_per_m = 1.5

[run]
scenario_id = table4_pipeline
los_mode = sampled
)";

inline constexpr const char* kFig5Rural = R"(# Rural uplink success versus slant distance for a UAV gateway at
# 100 m, all four modulation schemes.
[platform]
type = uav

[underground]
soil_permittivity = 5.8
soil_alpha_np_per_m = 1.5

[run]
scenario_id = fig5_rural
)";

inline constexpr const char* kFig6Environments = R"(# Morphology comparison for the 20 km HAP gateway. Sweep the
# environment axis with:
#   sweep fig6_environments.preset --param environment \
#     --values rural,urban,dense_urban
[platform]
type = hap

[underground]
soil_permittivity = 5.8
soil_alpha_np_per_m = 1.5

[run]
scenario_id = fig6_environments
los_mode = sampled
)";

inline constexpr const char* kFig7Density = R"(# Device-density study for the UAV gateway. Sweep the deployment
# size with:
#   sweep fig7_density.preset --param n_devices \
#     --values 10000,50000,100000
[platform]
type = uav

[underground]
soil_permittivity = 5.8
soil_alpha_np_per_m = 1.5

[run]
scenario_id = fig7_density
)";

inline constexpr const char* kFig8DepthVwc = R"(# Burial-depth and soil-moisture study for the 20 km HAP gateway.
# Soil attenuation stays on auto so both sweep axes are live:
#   sweep fig8_depth_vwc.preset --param burial_depth --values 0.2,0.6,1.0
#   sweep fig8_depth_vwc.preset --param vwc --values 0.05,0.1119,0.2
[platform]
type = hap

[underground]
soil_permittivity = auto
soil_alpha_np_per_m = auto

[run]
scenario_id = fig8_depth_vwc
los_mode = sampled
)";

}  // namespace preset_detail

inline const std::vector<PresetInfo>& preset_catalog() {
  static const std::vector<PresetInfo> catalog = {
      {"table4_pipeline", "rural LEO uplink for the reference pipeline deployment",
       preset_detail::kTable4Pipeline},
      {"fig5_rural", "rural UAV success-versus-distance curves", preset_detail::kFig5Rural},
      {"fig6_environments", "HAP morphology comparison (sweep environment)",
       preset_detail::kFig6Environments},
      {"fig7_density", "UAV device-density study (sweep n_devices)", preset_detail::kFig7Density},
      {"fig8_depth_vwc", "HAP burial-depth and soil-moisture study (sweep burial_depth or vwc)",
       preset_detail::kFig8DepthVwc},
  };
  return catalog;
}

// Resolves `arg` to config text. An existing file wins; otherwise the
// argument is treated as a preset name, with or without a .preset suffix.
inline std::string load_config_text(const std::string& arg) {
  if (std::ifstream in(arg); in) {
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return text;
  }
  std::string name = arg;
  const std::string suffix = ".preset";
  if (name.size() > suffix.size() &&
      name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
    name = name.substr(0, name.size() - suffix.size());
  const auto slash = name.find_last_of('/');
  const std::string base = slash == std::string::npos ? name : name.substr(slash + 1);
  for (const auto& p : preset_catalog()) {
    if (base == p.name) return p.text;
  }
  throw ConfigError("cannot open config file: " + arg +
                    " (and it does not name a preset; see `presets list`)");
}

}  // namespace untn
