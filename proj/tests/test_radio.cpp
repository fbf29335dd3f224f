#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "untn/radio.hpp"

// Covered tests:
// - dBm/mW and dB/linear conversions round-trip at 1e-9 relative error
// - SNR thresholds and sensitivities per spreading factor; SF9 rejected with the supported set
// - make_lora / make_lrfhss defaults
// - received power formula; negative path losses rejected
// - noise floor anchors at 125 kHz and 488 Hz with a 6 dB noise figure
// - link budget assembly and snr_pass monotone in received power
// - sir_capture_pass: empty list passes, monotone in target power, never helped by an
//   extra interferer, invariant under a common power shift
// - time-on-air anchors for 23-byte frames at SF7/SF10/SF12 and a 10-byte SF10 frame
// - low-data-rate optimization engages for SF12 at 125 kHz
// - time-on-air input validation
// - fragment count and decode threshold across both coding rates; payload bounds
// - scheme name / threshold / bandwidth accessors across the variant

using namespace untn;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("power unit conversions round-trip") {
  for (double dbm = -150.0; dbm <= 30.0; dbm += 7.3) {
    REQUIRE_THAT(mw_to_dbm(dbm_to_mw(dbm)), WithinAbs(dbm, 1e-9));
    REQUIRE_THAT(linear_to_db(db_to_linear(dbm)), WithinAbs(dbm, 1e-9));
  }
  for (double mw : {1e-15, 1e-6, 1.0, 3.16, 1e4}) {
    REQUIRE_THAT(dbm_to_mw(mw_to_dbm(mw)), WithinRel(mw, 1e-9));
  }
}

TEST_CASE("lora thresholds and sensitivities per spreading factor") {
  REQUIRE(lora_snr_threshold_db(7) == -6.0);
  REQUIRE(lora_snr_threshold_db(10) == -15.0);
  REQUIRE(lora_snr_threshold_db(12) == -20.0);
  REQUIRE(lora_sensitivity_dbm(7) == -123.0);
  REQUIRE(lora_sensitivity_dbm(10) == -132.0);
  REQUIRE(lora_sensitivity_dbm(12) == -137.0);
  REQUIRE_THROWS_WITH(lora_snr_threshold_db(9),
                      "unsupported LoRa spreading factor 9; supported set {7, 10, 12}");
  REQUIRE_THROWS_WITH(lora_sensitivity_dbm(8),
                      "unsupported LoRa spreading factor 8; supported set {7, 10, 12}");
}

TEST_CASE("scheme factory defaults") {
  const LoraScheme sf7 = make_lora(7);
  REQUIRE(sf7.sf == 7);
  REQUIRE(sf7.snr_threshold_db == -6.0);
  REQUIRE(sf7.sensitivity_dbm == -123.0);
  REQUIRE(sf7.bandwidth_hz == 125e3);
  REQUIRE(sf7.channels == 80);
  REQUIRE(sf7.frame_overhead_bytes == 13);

  const LrFhssScheme fhss = make_lrfhss();
  REQUIRE(fhss.obw_channels == 280);
  REQUIRE(fhss.header_replicas == 3);
  REQUIRE(fhss.cr == LrFhssCr::Cr13);
  REQUIRE_THAT(fhss.t_header_s, WithinAbs(0.233472, 1e-12));
  REQUIRE_THAT(fhss.t_fragment_s, WithinAbs(0.1024, 1e-12));
  REQUIRE(fhss.obw_bandwidth_hz == 488.0);
  REQUIRE(fhss.snr_threshold_db == 4.0);
}

TEST_CASE("received power formula") {
  RadioConfig radio;  // 14 dBm, 2.15 dBi device gain
  REQUIRE_THAT(received_power_dbm(radio, 35.0, 39.24, 139.98),
               WithinAbs(14.0 + 2.15 + 35.0 - 39.24 - 139.98, 1e-12));
  REQUIRE_THROWS_AS(received_power_dbm(radio, 35.0, -1.0, 139.98), ConfigError);
  REQUIRE_THROWS_AS(received_power_dbm(radio, 35.0, 39.24, -0.5), ConfigError);
}

TEST_CASE("noise floor anchors") {
  REQUIRE_THAT(noise_floor_dbm(6.0, 125e3), WithinAbs(-117.03089986991944, 1e-9));
  REQUIRE_THAT(noise_floor_dbm(6.0, 488.0), WithinAbs(-141.11580177997288, 1e-9));
  REQUIRE_THROWS_AS(noise_floor_dbm(6.0, 0.0), ConfigError);
}

TEST_CASE("link budget assembly and the snr gate") {
  RadioConfig radio;
  const LinkBudget lb = make_link_budget(radio, 35.0, 39.24, 139.98, 488.0);
  REQUIRE_THAT(lb.rx_power_dbm, WithinAbs(-128.07, 1e-9));
  REQUIRE_THAT(lb.snr_db, WithinAbs(lb.rx_power_dbm - lb.noise_dbm, 1e-12));

  const ModulationScheme fhss = make_lrfhss();
  bool prev_pass = false;
  for (double extra_gain = 0.0; extra_gain <= 30.0; extra_gain += 0.5) {
    const LinkBudget b = make_link_budget(radio, 35.0 + extra_gain, 39.24, 139.98, 488.0);
    const bool pass = snr_pass(b, fhss);
    REQUIRE((!prev_pass || pass));  // once passing, more power keeps passing
    prev_pass = pass;
  }
  REQUIRE(prev_pass);
}

TEST_CASE("sir capture decision") {
  REQUIRE(sir_capture_pass(-120.0, {}, 6.0));

  // monotone in target power at fixed interference
  const std::vector<double> field = {-110.0, -113.0};
  bool prev = false;
  for (double target = -120.0; target <= -90.0; target += 0.5) {
    const bool pass = sir_capture_pass(target, field, 6.0);
    REQUIRE((!prev || pass));
    prev = pass;
  }
  REQUIRE(prev);

  // an added interferer can only remove capture
  std::vector<double> growing;
  bool was_failing = false;
  for (double p : {-130.0, -120.0, -112.0, -105.0}) {
    growing.push_back(p);
    const bool pass = sir_capture_pass(-100.0, growing, 6.0);
    REQUIRE((!was_failing || !pass));
    was_failing = was_failing || !pass;
  }
  REQUIRE(was_failing);

  // shifting every power by a common constant never changes the outcome
  for (double shift : {-60.0, -7.3, 0.0, 12.5, 60.0}) {
    for (double target : {-100.0, -106.9, -103.05}) {
      std::vector<double> shifted;
      for (double p : field) shifted.push_back(p + shift);
      REQUIRE(sir_capture_pass(target + shift, shifted, 6.0) ==
              sir_capture_pass(target, field, 6.0));
    }
  }
}

TEST_CASE("time-on-air anchors") {
  // 10-byte application payload plus 13 bytes of LoRaWAN framing
  REQUIRE_THAT(lora_time_on_air_s(make_lora(7), 23), WithinRel(0.061696, 1e-9));
  REQUIRE_THAT(lora_time_on_air_s(make_lora(10), 23), WithinRel(0.370688, 1e-9));
  REQUIRE_THAT(lora_time_on_air_s(make_lora(12), 23), WithinRel(1.482752, 1e-9));
  REQUIRE_THAT(lora_time_on_air_s(make_lora(10), 10), WithinRel(0.288768, 1e-9));
}

TEST_CASE("low-data-rate optimization engages for SF12 at 125 kHz") {
  const double auto_toa = lora_time_on_air_s(12, 125e3, 23, 1, 8, true, true, Ldro::Auto);
  const double on_toa = lora_time_on_air_s(12, 125e3, 23, 1, 8, true, true, Ldro::On);
  const double off_toa = lora_time_on_air_s(12, 125e3, 23, 1, 8, true, true, Ldro::Off);
  REQUIRE(auto_toa == on_toa);
  REQUIRE(off_toa < on_toa);
  // SF7 stays unoptimized under Auto
  REQUIRE(lora_time_on_air_s(7, 125e3, 23, 1, 8, true, true, Ldro::Auto) ==
          lora_time_on_air_s(7, 125e3, 23, 1, 8, true, true, Ldro::Off));
}

TEST_CASE("time-on-air input validation") {
  REQUIRE_THROWS_AS(lora_time_on_air_s(4, 125e3, 23, 1, 8, true, true), ConfigError);
  REQUIRE_THROWS_AS(lora_time_on_air_s(13, 125e3, 23, 1, 8, true, true), ConfigError);
  REQUIRE_THROWS_AS(lora_time_on_air_s(10, 0.0, 23, 1, 8, true, true), ConfigError);
  REQUIRE_THROWS_AS(lora_time_on_air_s(10, 125e3, 256, 1, 8, true, true), ConfigError);
  REQUIRE_THROWS_AS(lora_time_on_air_s(10, 125e3, 23, 5, 8, true, true), ConfigError);
}

TEST_CASE("lrfhss fragmentation across coding rates") {
  // 10 bytes + 16-bit CRC = 96 info bits
  REQUIRE(lrfhss_fragment_count(10, LrFhssCr::Cr13) == 6);
  REQUIRE(lrfhss_fragment_count(10, LrFhssCr::Cr23) == 3);
  REQUIRE(lrfhss_fragments_needed(6, LrFhssCr::Cr13) == 2);
  REQUIRE(lrfhss_fragments_needed(3, LrFhssCr::Cr23) == 2);
  REQUIRE(lrfhss_fragment_count(58, LrFhssCr::Cr13) == 30);
  REQUIRE(lrfhss_fragments_needed(30, LrFhssCr::Cr13) == 10);
  REQUIRE_THROWS_AS(lrfhss_fragment_count(0, LrFhssCr::Cr13), ConfigError);
  REQUIRE_THROWS_AS(lrfhss_fragment_count(59, LrFhssCr::Cr13), ConfigError);
  REQUIRE_THROWS_AS(lrfhss_fragments_needed(0, LrFhssCr::Cr13), ConfigError);
  REQUIRE_THAT(lrfhss_cr_fraction(LrFhssCr::Cr13), WithinAbs(1.0 / 3.0, 1e-15));
  REQUIRE_THAT(lrfhss_cr_fraction(LrFhssCr::Cr23), WithinAbs(2.0 / 3.0, 1e-15));
  REQUIRE(std::string(to_string(LrFhssCr::Cr13)) == "1/3");
  REQUIRE(std::string(to_string(LrFhssCr::Cr23)) == "2/3");
}

TEST_CASE("scheme accessors across the variant") {
  const ModulationScheme lora = make_lora(10);
  const ModulationScheme fhss = make_lrfhss();
  REQUIRE(scheme_name(lora) == "sf10");
  REQUIRE(scheme_name(fhss) == "lrfhss");
  REQUIRE(scheme_snr_threshold_db(lora) == -15.0);
  REQUIRE(scheme_snr_threshold_db(fhss) == 4.0);
  REQUIRE(scheme_noise_bandwidth_hz(lora) == 125e3);
  REQUIRE(scheme_noise_bandwidth_hz(fhss) == 488.0);
}

TEST_CASE("radio validation") {
  RadioConfig radio;
  radio.freq_hz = 0.0;
  REQUIRE_THROWS_AS(validate_radio(radio), ConfigError);
  radio = RadioConfig{};
  radio.noise_figure_db = -1.0;
  REQUIRE_THROWS_AS(validate_radio(radio), ConfigError);
}
