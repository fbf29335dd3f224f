#pragma once

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "untn/common.hpp"

namespace untn {

enum class Platform { Uav, Hap, Leo };
enum class Environment { Rural, Urban, DenseUrban };

enum class LosMode { ExpectedDb, Sampled };

inline const char* to_string(Platform p) {
  switch (p) {
    case Platform::Uav: return "uav";
    case Platform::Hap: return "hap";
    case Platform::Leo: return "leo";
  }
  return "?";
}

inline const char* to_string(Environment e) {
  switch (e) {
    case Environment::Rural: return "rural";
    case Environment::Urban: return "urban";
    case Environment::DenseUrban: return "dense_urban";
  }
  return "?";
}

inline const char* to_string(LosMode m) {
  return m == LosMode::ExpectedDb ? "expected-db" : "sampled";
}

inline Platform platform_from_string(const std::string& s) {
  if (s == "uav") return Platform::Uav;
  if (s == "hap") return Platform::Hap;
  if (s == "leo") return Platform::Leo;
  throw ConfigError("unknown platform '" + s + "'; expected one of uav, hap, leo");
}

inline Environment environment_from_string(const std::string& s) {
  if (s == "rural") return Environment::Rural;
  if (s == "urban") return Environment::Urban;
  if (s == "dense_urban") return Environment::DenseUrban;
  throw ConfigError("unknown environment '" + s + "'; expected one of rural, urban, dense_urban");
}

inline LosMode los_mode_from_string(const std::string& s) {
  if (s == "expected-db") return LosMode::ExpectedDb;
  if (s == "sampled") return LosMode::Sampled;
  throw ConfigError("unknown los mode '" + s + "'; expected expected-db or sampled");
}

// Slant distance between a ground device and a platform at altitude H seen
// under elevation angle theta:
//   d = sqrt(R_E^2 sin^2(theta) + H^2 + 2 H R_E) - R_E sin(theta)
inline double slant_distance_m(double altitude_m, double elevation_deg) {
  if (elevation_deg < 10.0 || elevation_deg > 90.0)
    throw std::domain_error("elevation angle must be within [10, 90] degrees, got " +
                            std::to_string(elevation_deg));
  if (altitude_m <= 0.0) throw ConfigError("platform altitude must be positive");
  const double s = std::sin(deg_to_rad(elevation_deg));
  const double re = kEarthRadiusM;
  return std::sqrt(re * re * s * s + altitude_m * altitude_m + 2.0 * altitude_m * re) - re * s;
}

// Inverse of slant_distance_m on its valid range.
inline double elevation_from_slant_deg(double altitude_m, double slant_m) {
  const double re = kEarthRadiusM;
  const double s =
      (altitude_m * altitude_m + 2.0 * altitude_m * re - slant_m * slant_m) / (2.0 * slant_m * re);
  return rad_to_deg(std::asin(std::fmin(1.0, std::fmax(-1.0, s))));
}

// Elevation angle of the platform as seen from a device displaced from the
// sub-platform point. UAVs use the flat-earth angle; HAP/LEO use spherical
// geometry with the offset as a great-circle arc. Angles below 10 degrees
// mean the device lies outside the service footprint; that is reported, not
// thrown.
inline double elevation_from_ground_offset_deg(Platform platform, double altitude_m,
                                               double ground_offset_m) {
  if (ground_offset_m < 0.0) throw ConfigError("ground offset must be >= 0");
  if (platform == Platform::Uav) return rad_to_deg(std::atan2(altitude_m, ground_offset_m));
  const double re = kEarthRadiusM;
  const double psi = ground_offset_m / re;
  const double d = std::sqrt(re * re + (re + altitude_m) * (re + altitude_m) -
                             2.0 * re * (re + altitude_m) * std::cos(psi));
  const double s = ((re + altitude_m) * std::cos(psi) - re) / d;
  return rad_to_deg(std::asin(std::fmin(1.0, std::fmax(-1.0, s))));
}

inline bool in_footprint(double elevation_deg) { return elevation_deg >= 10.0; }

// Free-space path loss: 20 log10(f) + 20 log10(d) + 20 log10(4 pi / c).
inline double free_space_path_loss_db(double freq_hz, double distance_m) {
  if (freq_hz <= 0.0 || distance_m <= 0.0)
    throw ConfigError("free-space path loss requires positive frequency and distance");
  return 20.0 * std::log10(freq_hz) + 20.0 * std::log10(distance_m) +
         20.0 * std::log10(4.0 * kPi / kSpeedOfLightMps);
}

// ---------------------------------------------------------------------------
// Ground-to-UAV channel (full LOS, log-distance form with altitude-dependent
// coefficient and shadowing; rural and urban only).
// ---------------------------------------------------------------------------

inline double g2u_shadow_sigma_db(Environment env, double altitude_m) {
  switch (env) {
    case Environment::Rural: return 4.2 * std::exp(-0.0046 * altitude_m);
    case Environment::Urban: return 4.64 * std::exp(-0.0066 * altitude_m);
    default:
      throw ModelError("ground-to-UAV channel supports rural and urban environments only");
  }
}

// Median ground-to-UAV path loss (no shadowing term).
//   rural: max[23.9 - 1.8 log10(H), 20] log10(d) + 20 log10(40 pi f / 3) - 180
//   urban: -152 + 22 log10(d) + 20 log10(f)
inline double g2u_median_path_loss_db(Environment env, double altitude_m, double slant_m,
                                      double freq_hz) {
  if (slant_m <= 0.0 || altitude_m <= 0.0 || freq_hz <= 0.0)
    throw ConfigError("ground-to-UAV path loss requires positive inputs");
  switch (env) {
    case Environment::Rural:
      return std::fmax(23.9 - 1.8 * std::log10(altitude_m), 20.0) * std::log10(slant_m) +
             20.0 * std::log10(40.0 * kPi * freq_hz / 3.0) - 180.0;
    case Environment::Urban:
      return -152.0 + 22.0 * std::log10(slant_m) + 20.0 * std::log10(freq_hz);
    default:
      throw ModelError("ground-to-UAV channel supports rural and urban environments only");
  }
}

// Full ground-to-UAV loss; shadow_z is a standard normal draw.
inline double g2u_path_loss_db(Environment env, double altitude_m, double slant_m,
                               double freq_hz, double shadow_z) {
  return g2u_median_path_loss_db(env, altitude_m, slant_m, freq_hz) +
         g2u_shadow_sigma_db(env, altitude_m) * shadow_z;
}

// ---------------------------------------------------------------------------
// Ground-to-HAP / ground-to-satellite channel: free space + LOS-state
// shadow fading + NLOS clutter loss, driven by tabulated statistics.
// ---------------------------------------------------------------------------

struct EnvRow {
  double p_los = 1.0;
  double sigma_los_db = 0.0;
  double sigma_nlos_db = 0.0;
  double clutter_nlos_db = 0.0;
};

// Embedded copy of data/ntn_env_tables.txt (kept byte-identical; see the
// asset file for provenance).
inline const char* env_tables_text() {
  return
      "# NTN environment tables, version 1.\n"
      "# Transcribed from 3GPP TR 38.811 V15.4.0 section 6.6 (S-band rows):\n"
      "#   Table 6.6.1-1          LOS probability vs elevation\n"
      "#   Tables 6.6.2-1..2-3    shadow-fading sigma and clutter loss\n"
      "# Clutter loss applies to the NLOS state only; LOS clutter loss is zero.\n"
      "# Columns: environment elevation_deg p_los sigma_los_db sigma_nlos_db clutter_nlos_db\n"
      "rural 10 0.782 1.79 8.93 19.52\n"
      "rural 20 0.869 1.14 9.08 18.17\n"
      "rural 30 0.919 1.14 8.78 18.42\n"
      "rural 40 0.929 0.92 10.25 18.28\n"
      "rural 50 0.935 1.29 10.56 18.63\n"
      "rural 60 0.940 1.45 10.74 17.68\n"
      "rural 70 0.949 1.75 10.17 16.50\n"
      "rural 80 0.952 3.19 11.52 16.30\n"
      "rural 90 0.998 2.93 11.52 16.30\n"
      "urban 10 0.246 4.00 6.00 34.30\n"
      "urban 20 0.386 4.00 6.00 30.90\n"
      "urban 30 0.493 4.00 6.00 29.00\n"
      "urban 40 0.583 4.00 6.00 27.70\n"
      "urban 50 0.655 4.00 6.00 26.80\n"
      "urban 60 0.726 4.00 6.00 26.20\n"
      "urban 70 0.805 4.00 6.00 25.80\n"
      "urban 80 0.919 4.00 6.00 25.50\n"
      "urban 90 0.999 4.00 6.00 25.50\n"
      "dense_urban 10 0.282 3.50 15.50 34.30\n"
      "dense_urban 20 0.331 3.40 13.90 30.90\n"
      "dense_urban 30 0.398 2.90 12.40 29.00\n"
      "dense_urban 40 0.468 3.00 11.70 27.70\n"
      "dense_urban 50 0.537 3.10 10.60 26.80\n"
      "dense_urban 60 0.612 2.70 10.50 26.20\n"
      "dense_urban 70 0.738 2.50 10.10 25.80\n"
      "dense_urban 80 0.820 2.30 9.20 25.50\n"
      "dense_urban 90 0.981 1.20 9.20 25.50\n";
}

class EnvTables {
 public:
  static constexpr int kAngleCount = 9;  // 10..90 degrees in 10-degree steps

  static EnvTables parse(const std::string& text) {
    EnvTables t;
    std::array<std::array<bool, kAngleCount>, 3> seen{};
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      std::string env_name;
      if (!(ls >> env_name)) continue;
      double angle, p_los, s_los, s_nlos, clutter;
      if (!(ls >> angle >> p_los >> s_los >> s_nlos >> clutter))
        throw ConfigError("environment table line " + std::to_string(line_no) + " is malformed");
      const int env = env_index(env_name, line_no);
      const int ai = angle_index_checked(angle, line_no);
      if (p_los < 0.0 || p_los > 1.0 || s_los < 0.0 || s_nlos < 0.0 || clutter < 0.0)
        throw ConfigError("environment table line " + std::to_string(line_no) +
                          " has out-of-range values");
      t.rows_[env][ai] = {p_los, s_los, s_nlos, clutter};
      seen[env][ai] = true;
    }
    for (int e = 0; e < 3; ++e)
      for (int a = 0; a < kAngleCount; ++a)
        if (!seen[e][a])
          throw ConfigError("environment table is missing the " + std::to_string((a + 1) * 10) +
                            " degree row for an environment");
    for (int e = 0; e < 3; ++e)
      for (int a = 1; a < kAngleCount; ++a)
        if (t.rows_[e][a].p_los < t.rows_[e][a - 1].p_los)
          throw ConfigError("environment table LOS probability must be nondecreasing in angle");
    return t;
  }

  static EnvTables builtin() { return parse(env_tables_text()); }

  static EnvTables load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open environment table file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
  }

  // Nearest tabulated reference angle (10..90).
  static int reference_angle_deg(double elevation_deg) {
    int idx = static_cast<int>(std::lround(elevation_deg / 10.0));
    if (idx < 1) idx = 1;
    if (idx > kAngleCount) idx = kAngleCount;
    return idx * 10;
  }

  const EnvRow& at(Environment env, double elevation_deg) const {
    return rows_[static_cast<int>(env)][reference_angle_deg(elevation_deg) / 10 - 1];
  }

 private:
  static int env_index(const std::string& name, int line_no) {
    if (name == "rural") return 0;
    if (name == "urban") return 1;
    if (name == "dense_urban") return 2;
    throw ConfigError("environment table line " + std::to_string(line_no) +
                      " names unknown environment '" + name + "'");
  }

  static int angle_index_checked(double angle, int line_no) {
    const int a = static_cast<int>(angle);
    if (a < 10 || a > 90 || a % 10 != 0 || angle != a)
      throw ConfigError("environment table line " + std::to_string(line_no) +
                        " has a non-reference elevation angle");
    return a / 10 - 1;
  }

  std::array<std::array<EnvRow, kAngleCount>, 3> rows_{};
};

// Ground-to-HAP/LEO path loss.
//   expected-db: L = L_fs + p_los*(sigma_los z1) + (1-p_los)*(sigma_nlos z2 + CL)
//   sampled:     L = L_fs + sigma_los z1            if los_state
//                L = L_fs + sigma_nlos z2 + CL      otherwise
// z1, z2 are standard normal draws; los_state is a Bernoulli(p_los) draw and
// is consulted only in sampled mode.
inline double g2x_path_loss_db(const EnvRow& row, double freq_hz, double slant_m, LosMode mode,
                               double z_los, double z_nlos, bool los_state) {
  const double fs = free_space_path_loss_db(freq_hz, slant_m);
  if (mode == LosMode::ExpectedDb)
    return fs + row.p_los * row.sigma_los_db * z_los +
           (1.0 - row.p_los) * (row.sigma_nlos_db * z_nlos + row.clutter_nlos_db);
  return los_state ? fs + row.sigma_los_db * z_los
                   : fs + row.sigma_nlos_db * z_nlos + row.clutter_nlos_db;
}

// Mean of g2x_path_loss_db over the shadowing draws.
inline double g2x_expected_loss_db(const EnvRow& row, double freq_hz, double slant_m) {
  return free_space_path_loss_db(freq_hz, slant_m) +
         (1.0 - row.p_los) * row.clutter_nlos_db;
}

}  // namespace untn
