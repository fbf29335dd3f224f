// Burial-depth profile seen from the HAP gateway: runs a short Monte Carlo
// per depth and prints the scenario-averaged delivery probability of every
// scheme, showing how fast the soil column closes the link.

#include <cstdio>

#include "untn/config.hpp"

using namespace untn;

int main() {
  ScenarioConfig base = default_scenario();
  base.platform = Platform::Hap;
  apply_platform_defaults(base);
  base.run.los_mode = LosMode::Sampled;
  base.run.trials = 4000;

  std::printf("%-9s %-9s", "depth_m", "pl_u_db");
  for (const auto& s : base.schemes) std::printf(" %-8s", scheme_name(s).c_str());
  std::printf("\n");

  for (double depth : {0.2, 0.4, 0.6, 0.8, 1.0}) {
    const ScenarioConfig cfg = apply_sweep_value(base, SweepParameter::BurialDepth,
                                                 std::to_string(depth));
    const ScenarioResult r = run_scenario(cfg);
    std::printf("%-9.1f %-9.2f", depth, r.pl_underground_db);
    for (const auto& s : r.schemes) std::printf(" %-8.4f", s.p_s());
    std::printf("\n");
  }
  return 0;
}
