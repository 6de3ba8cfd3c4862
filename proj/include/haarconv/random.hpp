#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace haarconv {

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  return mix64(x + 0x9e3779b97f4a7c15ULL);
}

/// SplitMix64 stream keyed by (seed, stream, index).
///
/// Every particle, pair or permutation gets its own key, so draws never
/// depend on iteration order or on the number of OpenMP threads.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
      : state_(splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

// Stream identifiers; keep distinct so unrelated draws never share keys.
namespace streams {
inline constexpr std::uint64_t haar = 0x11;
inline constexpr std::uint64_t resample_lhs = 0x21;
inline constexpr std::uint64_t resample_rhs = 0x22;
inline constexpr std::uint64_t subgroup_k = 0x23;
inline constexpr std::uint64_t lift = 0x24;
inline constexpr std::uint64_t average = 0x25;
inline constexpr std::uint64_t section = 0x31;
inline constexpr std::uint64_t energy_subsample = 0x41;
inline constexpr std::uint64_t energy_permutation = 0x42;
inline constexpr std::uint64_t heat = 0x51;
inline constexpr std::uint64_t skeleton = 0x61;
inline constexpr std::uint64_t idempotent = 0x62;
inline constexpr std::uint64_t fixture = 0x71;
}  // namespace streams

}  // namespace haarconv
