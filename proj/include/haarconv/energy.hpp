#pragma once

#include <cstddef>
#include <cstdint>

#include "haarconv/measure.hpp"

namespace haarconv {

struct EnergyTestOptions {
  std::size_t permutations = 199;
  double level = 0.01;
  /// Each side is cut down to at most this many points before the O(N^2)
  /// distance matrix is built: distinct particles for equal weights, draws by
  /// weight otherwise.
  std::size_t max_points = 500;
  std::uint64_t seed = 0;
};

struct EnergyTestResult {
  double statistic = 0;  ///< energy distance 2E d(X,Y) - E d(X,X') - E d(Y,Y')
  double p_value = 1;
  bool pass = true;  ///< p_value > level
  std::size_t points = 0;  ///< points per side actually compared
};

inline constexpr std::size_t kMinEnergyParticles = 100;

/// Two-sample permutation test of equality in distribution. Uses the
/// geodesic angle on SO(3) and the chordal distance on S^2. Both sides are
/// resampled with the same random keys, so identical inputs give statistic
/// 0. Throws UnsupportedError below 100 particles per side.
template <class Point>
EnergyTestResult energy_distance_test(const Ensemble<Point>& a, const Ensemble<Point>& b,
                                      const EnergyTestOptions& opts = {});

extern template EnergyTestResult energy_distance_test(const RotationEnsemble&, const RotationEnsemble&,
                                                      const EnergyTestOptions&);
extern template EnergyTestResult energy_distance_test(const SphereEnsemble&, const SphereEnsemble&,
                                                      const EnergyTestOptions&);

}  // namespace haarconv
