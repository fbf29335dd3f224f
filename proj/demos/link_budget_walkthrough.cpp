// Walks the reference pipeline link budget step by step: underground exit
// loss, slant geometry, free-space loss, and the remaining SNR margin for
// SF10 LoRa and LR-FHSS at a few elevation angles of the LEO pass.

#include <cstdio>

#include "untn/config.hpp"

using namespace untn;

int main() {
  ScenarioConfig cfg = default_scenario();
  cfg.platform = Platform::Leo;
  apply_platform_defaults(cfg);
  resolve_scenario(cfg);

  const double pl_u = underground_path_loss_db(cfg.stack);
  std::printf("underground stack loss: %.2f dB (multipath margin %.0f dB included)\n", pl_u,
              cfg.stack.multipath_margin_db);

  const LoraScheme sf10 = make_lora(10);
  const LrFhssScheme fhss = make_lrfhss();
  std::printf("noise floor: %.2f dBm in %.0f Hz (LoRa), %.2f dBm in %.0f Hz (LR-FHSS OBW)\n",
              noise_floor_dbm(cfg.radio.noise_figure_db, sf10.bandwidth_hz), sf10.bandwidth_hz,
              noise_floor_dbm(cfg.radio.noise_figure_db, fhss.obw_bandwidth_hz),
              fhss.obw_bandwidth_hz);

  std::printf("\n%-10s %-12s %-10s %-16s %-16s\n", "elev_deg", "slant_km", "fspl_db",
              "sf10_margin_db", "fhss_margin_db");
  for (double elev : {10.0, 30.0, 50.0, 70.0, 90.0}) {
    const double slant = slant_distance_m(cfg.altitude_m, elev);
    const double fspl = free_space_path_loss_db(cfg.radio.freq_hz, slant);
    const LinkBudget lb_lora =
        make_link_budget(cfg.radio, cfg.gateway_gain_dbi, pl_u, fspl, sf10.bandwidth_hz);
    const LinkBudget lb_fhss =
        make_link_budget(cfg.radio, cfg.gateway_gain_dbi, pl_u, fspl, fhss.obw_bandwidth_hz);
    std::printf("%-10.0f %-12.1f %-10.2f %-16.2f %-16.2f\n", elev, slant / 1000.0, fspl,
                lb_lora.snr_db - sf10.snr_threshold_db, lb_fhss.snr_db - fhss.snr_threshold_db);
  }
  return 0;
}
