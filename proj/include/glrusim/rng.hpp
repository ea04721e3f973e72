#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace glrusim {

// SplitMix64 step function (Vigna). Used for seed derivation and for the
// per-(request, chunk) service-time substreams.
struct SplitMix64 {
  std::uint64_t state = 0;

  constexpr explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

inline constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  SplitMix64 s(seed ^ (salt + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)));
  return s.next();
}

// Map 64 random bits to the open interval (0,1); safe as a log/pow argument.
inline constexpr double to_unit_open(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

inline double uniform01(std::mt19937_64& g) { return to_unit_open(g()); }

inline double exponential_draw(std::mt19937_64& g, double rate) {
  return -std::log(uniform01(g)) / rate;
}

inline double pareto_draw(std::mt19937_64& g, double shape, double scale) {
  return scale * std::pow(uniform01(g), -1.0 / shape);
}

}  // namespace glrusim
