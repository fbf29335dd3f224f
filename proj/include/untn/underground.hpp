#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "untn/common.hpp"

namespace untn {

// One stratum crossed by the vertical underground path, listed from the
// buried transmitter upward to the surface.
struct MediumLayer {
  std::string name;
  double thickness_m = 0.0;
  double rel_permittivity = 1.0;
  double attenuation_np_per_m = 0.0;
};

// Ordered media between transmitter and open air, plus the fixed
// multipath/scattering margin applied once per link. The exit medium above
// the last layer defaults to air.
struct LayerStack {
  std::vector<MediumLayer> layers;
  double multipath_margin_db = 27.0;
  double exit_permittivity = 1.0;
};

inline void validate_stack(const LayerStack& stack) {
  if (stack.layers.empty()) throw ConfigError("underground layer stack is empty");
  for (const auto& layer : stack.layers) {
    if (layer.thickness_m < 0.0)
      throw ConfigError("layer '" + layer.name + "' has negative thickness");
    if (layer.rel_permittivity < 1.0)
      throw ConfigError("layer '" + layer.name + "' has relative permittivity < 1");
    if (layer.attenuation_np_per_m < 0.0)
      throw ConfigError("layer '" + layer.name + "' has negative attenuation constant");
  }
  if (stack.multipath_margin_db < 0.0) throw ConfigError("multipath margin must be >= 0 dB");
  if (stack.exit_permittivity < 1.0) throw ConfigError("exit permittivity must be >= 1");
}

// Absorption along the vertical path: L_m = sum_k 8.69 * alpha_k * d_k  [dB].
inline double medium_absorption_db(const LayerStack& stack) {
  validate_stack(stack);
  double total = 0.0;
  for (const auto& layer : stack.layers)
    total += 8.69 * layer.attenuation_np_per_m * layer.thickness_m;
  return total;
}

// Aggregate boundary loss. Each interface between media with intrinsic
// impedances z = sqrt(mu0/(eps0*eps)) reflects |G|^2 = ((z1-z2)/(z1+z2))^2 of
// the incident power, costing |10 log10(1 - |G|^2)| dB in transmission.
// The final interface into the exit medium (air by default) is included.
// Zero-thickness layers carry no medium and create no interface.
inline double refraction_loss_db(const LayerStack& stack) {
  validate_stack(stack);
  double total = 0.0;
  double prev = 0.0;
  bool have_prev = false;
  auto cross = [&](double eps_next) {
    if (have_prev) {
      // z is proportional to 1/sqrt(eps); the common factor cancels in G.
      const double z1 = 1.0 / std::sqrt(prev);
      const double z2 = 1.0 / std::sqrt(eps_next);
      const double g = (z1 - z2) / (z1 + z2);
      total += std::fabs(10.0 * std::log10(1.0 - g * g));
    }
    prev = eps_next;
    have_prev = true;
  };
  for (const auto& layer : stack.layers)
    if (layer.thickness_m > 0.0) cross(layer.rel_permittivity);
  cross(stack.exit_permittivity);
  return total;
}

// Total underground path loss: PL_u = L_m + L_r + L_f  [dB].
inline double underground_path_loss_db(const LayerStack& stack) {
  return medium_absorption_db(stack) + refraction_loss_db(stack) + stack.multipath_margin_db;
}

}  // namespace untn
