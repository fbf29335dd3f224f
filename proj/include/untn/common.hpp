#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace untn {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr double kSpeedOfLightMps = 299792458.0;
inline constexpr double kEarthRadiusM = 6371e3;
inline constexpr double kVacuumPermeability = 1.25663706212e-6;   // H/m
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;   // F/m
inline constexpr double kPi = 3.14159265358979323846;

// Raised on malformed or out-of-range configuration input.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when inputs fall outside a model's published validity range.
struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

struct WilsonInterval {
  double low = 0.0;
  double high = 0.0;
};

// Wilson score interval for a binomial proportion (default 95%).
inline WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                      double z = 1.959963984540054) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::fmax(center - half, 0.0), std::fmin(center + half, 1.0)};
}

}  // namespace untn
