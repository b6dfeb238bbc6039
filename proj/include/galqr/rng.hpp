#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace galqr {

// SplitMix64 step (Steele, Lea & Flood 2014); used for seed mixing only.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seedable generator handle. Every sampler in the library takes one of
// these by reference; there is no global RNG state. Independent streams
// for concurrent work are derived with stream(), which mixes the parent
// seed with the stream index through SplitMix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  std::uint64_t seed() const { return seed_; }

  Rng stream(std::uint64_t index) const {
    std::uint64_t s = seed_ ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    splitmix64(s);
    return Rng(splitmix64(s));
  }

  // Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via the Box-Muller transform; the companion variate
  // is cached, so one call in two consumes no engine output.
  double normal() {
    if (has_cache_) {
      has_cache_ = false;
      return cache_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double t = 6.283185307179586476925286766559 * uniform();
    cache_ = r * std::sin(t);
    has_cache_ = true;
    return r * std::cos(t);
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  // Exponential with the given mean.
  double exponential(double mean = 1.0) { return -mean * std::log(uniform()); }

 private:
  static std::uint64_t mix(std::uint64_t seed) {
    std::uint64_t s = seed;
    splitmix64(s);
    return splitmix64(s);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double cache_ = 0.0;
  bool has_cache_ = false;
};

}  // namespace galqr
