#pragma once

#include <cmath>
#include <string>

#include "untn/common.hpp"

namespace untn {

// Volumetric soil description for the dielectric mixing model.
struct SoilProperties {
  double vwc_fraction = 0.1119;        // volumetric water content, m_v
  double clay_fraction = 0.1686;       // mass fraction
  double sand_fraction = 0.05;         // mass fraction; remainder is silt
  double bulk_density_g_cm3 = 1.5;
  double particle_density_g_cm3 = 2.66;
  double frequency_hz = 433e6;
};

struct SoilDielectric {
  double eps_real = 0.0;
  double eps_imag = 0.0;
};

inline void validate_soil(const SoilProperties& s) {
  if (!(s.vwc_fraction > 0.0 && s.vwc_fraction < 1.0))
    throw ConfigError("soil vwc_fraction must be in (0, 1), got " + std::to_string(s.vwc_fraction));
  if (s.clay_fraction < 0.0 || s.sand_fraction < 0.0 ||
      s.clay_fraction + s.sand_fraction > 1.0)
    throw ConfigError("soil clay/sand fractions must be nonnegative and sum to at most 1");
  if (s.bulk_density_g_cm3 <= 0.0 || s.particle_density_g_cm3 <= s.bulk_density_g_cm3)
    throw ConfigError("soil densities must satisfy 0 < bulk < particle");
}

// Complex relative permittivity of moist soil after Peplinski, Ulaby &
// Dobson, "Dielectric properties of soils in the 0.3-1.3 GHz range",
// IEEE Trans. Geosci. Remote Sensing 33(3), 1995 (with the published
// corrections). Valid only inside that frequency band.
inline SoilDielectric soil_dielectric(const SoilProperties& soil) {
  validate_soil(soil);
  const double freq_hz = soil.frequency_hz;
  if (freq_hz < 0.3e9 || freq_hz > 1.3e9)
    throw ModelError("soil dielectric model is valid for 0.3-1.3 GHz only, got " +
                     std::to_string(freq_hz / 1e9) + " GHz");

  const double mv = soil.vwc_fraction;
  const double sand = soil.sand_fraction;
  const double clay = soil.clay_fraction;
  const double rho_b = soil.bulk_density_g_cm3;
  const double rho_s = soil.particle_density_g_cm3;

  const double alpha = 0.65;
  const double beta_re = 1.2748 - 0.519 * sand - 0.152 * clay;
  const double beta_im = 1.33797 - 0.603 * sand - 0.166 * clay;
  const double eps_solid = std::pow(1.01 + 0.44 * rho_s, 2.0) - 0.062;

  // Debye relaxation of free water; 2*pi*tau_w = 0.58e-10 s at room temperature.
  const double eps_w0 = 80.1;
  const double eps_winf = 4.9;
  const double x = 0.58e-10 * freq_hz;
  const double eps_fw_re = eps_winf + (eps_w0 - eps_winf) / (1.0 + x * x);

  const double sigma_eff = 0.0467 + 0.2204 * rho_b - 0.4111 * sand + 0.6614 * clay;
  const double eps_fw_im = x * (eps_w0 - eps_winf) / (1.0 + x * x) +
                           sigma_eff / (2.0 * kPi * kVacuumPermittivity * freq_hz) *
                               (rho_s - rho_b) / (rho_s * mv);

  SoilDielectric out;
  out.eps_real = 1.15 * std::pow(1.0 + (rho_b / rho_s) * (std::pow(eps_solid, alpha) - 1.0) +
                                     std::pow(mv, beta_re) * std::pow(eps_fw_re, alpha) - mv,
                                 1.0 / alpha) -
                 0.68;
  out.eps_imag = std::pow(std::pow(mv, beta_im) * std::pow(eps_fw_im, alpha), 1.0 / alpha);
  return out;
}

// Attenuation constant of a lossy dielectric:
//   alpha = w * sqrt( (mu0 eps0 eps'/2) * (sqrt(1 + (eps''/eps')^2) - 1) )   [Np/m]
inline double attenuation_from_dielectric(double eps_real, double eps_imag, double freq_hz) {
  if (eps_real < 1.0) throw ConfigError("relative permittivity must be >= 1");
  if (eps_imag < 0.0) throw ConfigError("dielectric loss factor must be >= 0");
  const double w = 2.0 * kPi * freq_hz;
  const double ratio = eps_imag / eps_real;
  const double radicand = kVacuumPermeability * kVacuumPermittivity * eps_real / 2.0 *
                          (std::sqrt(1.0 + ratio * ratio) - 1.0);
  return w * std::sqrt(radicand);
}

// Small-loss-tangent attenuation constant for media specified as
// (eps', tan delta) rather than through the soil mixing model:
//   alpha = (w/c) * sqrt(eps') * tan(delta) / 2   [Np/m]
inline double attenuation_from_loss_tangent(double eps_real, double loss_tangent,
                                            double freq_hz) {
  if (eps_real < 1.0) throw ConfigError("relative permittivity must be >= 1");
  if (loss_tangent < 0.0) throw ConfigError("loss tangent must be >= 0");
  const double w = 2.0 * kPi * freq_hz;
  return w / kSpeedOfLightMps * std::sqrt(eps_real) * loss_tangent / 2.0;
}

struct SoilAttenuation {
  double alpha_np_per_m = 0.0;
  double eps_real = 1.0;
};

// (alpha, eps') pair of moist soil at the configured frequency.
inline SoilAttenuation soil_attenuation_constant(const SoilProperties& soil) {
  const SoilDielectric d = soil_dielectric(soil);
  return {attenuation_from_dielectric(d.eps_real, d.eps_imag, soil.frequency_hz), d.eps_real};
}

}  // namespace untn
