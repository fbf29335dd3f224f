#pragma once

#include <cmath>
#include <cstdint>

namespace untn {

// Counter-based random streams: a stream is fully determined by
// (seed, stream_id, trial_index), so trials can be evaluated in any order
// or split across any number of workers without changing a single draw.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t trial_index) {
    state_ = mix(mix(mix(seed) + 0x9E3779B97F4A7C15ULL * (stream_id + 1)) + trial_index);
    if (state_ == 0) state_ = 0x853C49E6748FEA9BULL;
  }

  std::uint64_t next_u64() {
    // splitmix64 step
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n).
  std::uint32_t uniform_int(std::uint32_t n) {
    return static_cast<std::uint32_t>((static_cast<__uint128_t>(next_u64()) * n) >> 64);
  }

  bool bernoulli(double p) { return uniform01() < p; }

  // Standard normal (Box-Muller, cosine branch).
  double normal() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  // Poisson count by Knuth multiplication, chunked so the running product
  // never underflows for large means.
  std::uint64_t poisson(double mean) {
    std::uint64_t count = 0;
    while (mean > 500.0) {
      count += poisson_knuth(500.0);
      mean -= 500.0;
    }
    return count + poisson_knuth(mean);
  }

 private:
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  std::uint64_t poisson_knuth(double mean) {
    if (mean <= 0.0) return 0;
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double product = 1.0;
    do {
      ++k;
      product *= uniform01();
    } while (product > limit);
    return k - 1;
  }

  std::uint64_t state_;
};

// Stream identifiers used by the scenario engine. Interference streams are
// offset per modulation scheme so schemes stay paired on positions but draw
// independent traffic.
enum : std::uint64_t {
  kStreamTargetGeometry = 1,
  kStreamTargetChannel = 2,
  kStreamInterference = 16,
};

}  // namespace untn
