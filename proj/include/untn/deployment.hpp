#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "untn/common.hpp"
#include "untn/ntn.hpp"
#include "untn/rng.hpp"

namespace untn {

enum class DeploymentMode { DiscArea, MinElevation };

inline const char* to_string(DeploymentMode m) {
  return m == DeploymentMode::DiscArea ? "disc_area" : "min_elevation";
}

struct DeploymentModel {
  DeploymentMode mode = DeploymentMode::MinElevation;
  double area_km2 = 1.0;
  double min_elevation_deg = 10.0;
};

inline void validate_deployment(const DeploymentModel& d) {
  if (d.area_km2 <= 0.0) throw ConfigError("deployment area_km2 must be positive");
  if (d.min_elevation_deg < 10.0 || d.min_elevation_deg > 90.0)
    throw ConfigError("deployment min_elevation_deg must lie in [10, 90]");
}

// Reference device densities per km^2 at N in {10k, 50k, 100k}, linearly
// interpolated in N and clamped at the table ends.
inline double reference_density_per_km2(Platform platform, double n_devices) {
  if (n_devices <= 0.0) throw ConfigError("device count must be positive");
  if (platform == Platform::Uav) return n_devices;  // one km^2 at every table row
  static constexpr double kN[3] = {10e3, 50e3, 100e3};
  const double* rows = nullptr;
  static constexpr double kHap[3] = {0.3, 1.3, 2.7};
  static constexpr double kLeo[3] = {0.0009, 0.0045, 0.009};
  rows = platform == Platform::Hap ? kHap : kLeo;
  if (n_devices <= kN[0]) return rows[0];
  if (n_devices >= kN[2]) return rows[2];
  const int i = n_devices <= kN[1] ? 0 : 1;
  const double t = (n_devices - kN[i]) / (kN[i + 1] - kN[i]);
  return rows[i] + t * (rows[i + 1] - rows[i]);
}

inline double footprint_area_km2_from_density(Platform platform, double n_devices) {
  return n_devices / reference_density_per_km2(platform, n_devices);
}

struct Footprint {
  Platform platform = Platform::Uav;
  double altitude_m = 100.0;
  double disc_radius_m = 0.0;   // UAV flat-disc footprint
  double cos_psi_max = 1.0;     // HAP/LEO spherical-cap half-angle
  double min_slant_m = 0.0;
  double max_slant_m = 0.0;
  double rim_elevation_deg = 90.0;
  bool clamped_to_rim = false;  // area request exceeded the elevation bound
};

namespace detail {

inline double cap_cos_psi_at_slant(double altitude_m, double slant_m) {
  const double r = kEarthRadiusM;
  const double rh = r + altitude_m;
  return (r * r + rh * rh - slant_m * slant_m) / (2.0 * r * rh);
}

inline double cap_slant_at_cos_psi(double altitude_m, double cos_psi) {
  const double r = kEarthRadiusM;
  const double rh = r + altitude_m;
  const double s2 = r * r + rh * rh - 2.0 * r * rh * cos_psi;
  return std::sqrt(std::fmax(s2, 0.0));
}

}  // namespace detail

inline Footprint make_footprint(Platform platform, double altitude_m,
                                const DeploymentModel& deployment) {
  validate_deployment(deployment);
  if (altitude_m <= 0.0) throw ConfigError("platform altitude must be positive");
  Footprint f;
  f.platform = platform;
  f.altitude_m = altitude_m;
  f.min_slant_m = altitude_m;
  const double theta_min = deployment.min_elevation_deg;
  if (platform == Platform::Uav) {
    const double rim_radius = altitude_m / std::tan(deg_to_rad(theta_min));
    double radius = rim_radius;
    if (deployment.mode == DeploymentMode::DiscArea) {
      radius = std::sqrt(deployment.area_km2 * 1e6 / kPi);
      if (radius > rim_radius) {
        radius = rim_radius;
        f.clamped_to_rim = true;
      }
    }
    f.disc_radius_m = radius;
    f.max_slant_m = std::hypot(altitude_m, radius);
    f.rim_elevation_deg = elevation_from_ground_offset_deg(platform, altitude_m, radius);
    return f;
  }
  const double rim_slant = slant_distance_m(altitude_m, theta_min);
  const double cos_psi_rim = detail::cap_cos_psi_at_slant(altitude_m, rim_slant);
  double cos_psi = cos_psi_rim;
  if (deployment.mode == DeploymentMode::DiscArea) {
    const double r = kEarthRadiusM;
    cos_psi = 1.0 - deployment.area_km2 * 1e6 / (2.0 * kPi * r * r);
    if (cos_psi < cos_psi_rim) {
      cos_psi = cos_psi_rim;
      f.clamped_to_rim = true;
    }
  }
  f.cos_psi_max = cos_psi;
  f.max_slant_m = detail::cap_slant_at_cos_psi(altitude_m, cos_psi);
  f.rim_elevation_deg = elevation_from_slant_deg(altitude_m, f.max_slant_m);
  return f;
}

inline double footprint_area_km2(const Footprint& f) {
  if (f.platform == Platform::Uav) return kPi * f.disc_radius_m * f.disc_radius_m / 1e6;
  const double r = kEarthRadiusM;
  return 2.0 * kPi * r * r * (1.0 - f.cos_psi_max) / 1e6;
}

struct DevicePosition {
  double ground_offset_m = 0.0;  // disc radius or great-circle arc from nadir
  double slant_m = 0.0;
  double elevation_deg = 90.0;
};

inline DevicePosition draw_position(const Footprint& f, RandomStream& rng) {
  DevicePosition p;
  const double u = rng.uniform01();
  if (f.platform == Platform::Uav) {
    const double r = f.disc_radius_m * std::sqrt(u);
    p.ground_offset_m = r;
    p.slant_m = std::hypot(f.altitude_m, r);
    p.elevation_deg = elevation_from_ground_offset_deg(f.platform, f.altitude_m, r);
    return p;
  }
  const double cos_psi = 1.0 - u * (1.0 - f.cos_psi_max);
  const double psi = std::acos(std::fmin(cos_psi, 1.0));
  p.ground_offset_m = kEarthRadiusM * psi;
  p.slant_m = detail::cap_slant_at_cos_psi(f.altitude_m, cos_psi);
  p.elevation_deg = elevation_from_slant_deg(f.altitude_m, p.slant_m);
  return p;
}

// P(slant <= s) for a uniform position over the footprint.
inline double slant_cdf(const Footprint& f, double slant_m) {
  if (slant_m <= f.min_slant_m) return 0.0;
  if (slant_m >= f.max_slant_m) return 1.0;
  if (f.platform == Platform::Uav) {
    const double num = slant_m * slant_m - f.altitude_m * f.altitude_m;
    return num / (f.disc_radius_m * f.disc_radius_m);
  }
  const double cos_psi = detail::cap_cos_psi_at_slant(f.altitude_m, slant_m);
  return (1.0 - cos_psi) / (1.0 - f.cos_psi_max);
}

inline double bin_probability(const Footprint& f, double slant_lo_m, double slant_hi_m) {
  return slant_cdf(f, slant_hi_m) - slant_cdf(f, slant_lo_m);
}

struct BinGrid {
  double lo_m = 0.0;
  double hi_m = 0.0;
  int count = 20;

  double width_m() const { return (hi_m - lo_m) / count; }
  double low(int i) const { return lo_m + i * width_m(); }
  double high(int i) const { return lo_m + (i + 1) * width_m(); }
  double center(int i) const { return lo_m + (i + 0.5) * width_m(); }
  int index(double slant_m) const {
    const double w = width_m();
    if (!(w > 0.0)) return 0;  // degenerate grid (90-degree rim), everything in bin 0
    const int i = static_cast<int>((slant_m - lo_m) / w);
    return std::clamp(i, 0, count - 1);
  }
};

inline BinGrid make_bin_grid(const Footprint& f, int bins) {
  if (bins < 1) throw ConfigError("bin count must be >= 1");
  return BinGrid{f.min_slant_m, f.max_slant_m, bins};
}

}  // namespace untn
