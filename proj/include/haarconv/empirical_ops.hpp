#pragma once

#include <cstddef>
#include <cstdint>

#include "haarconv/energy.hpp"
#include "haarconv/homogeneous.hpp"
#include "haarconv/measure.hpp"
#include "haarconv/measure_ops.hpp"

namespace haarconv {

inline constexpr std::size_t kDefaultParticles = 10000;

/// Output size and randomness for Monte Carlo products. The result depends
/// only on (inputs, seed, particles).
struct ParticleBudget {
  std::size_t particles = kDefaultParticles;
  std::uint64_t seed = 0;
};

/// Products g h of independently resampled particle pairs.
RotationEnsemble convolve(const RotationEnsemble& mu, const RotationEnsemble& nu, const ParticleBudget& budget);
/// Points S(x) k y with x ~ mu, y ~ nu and k Haar on SO(2), one triple per output particle.
SphereEnsemble convolve(const SphereEnsemble& mu, const SphereEnsemble& nu, const SphereSection& s,
                        const ParticleBudget& budget);
/// Sequential n-fold product; n = 0 gives the identity point mass.
RotationEnsemble convolve_power(const RotationEnsemble& mu, unsigned n, const ParticleBudget& budget);

RotationEnsemble pushforward(const RotationEnsemble& mu, Translation map, const Rotation& by);
SphereEnsemble pushforward(const SphereEnsemble& nu, const Rotation& by);
SphereEnsemble project(const RotationEnsemble& mu);
/// Particles S(x) k with k Haar on SO(2); weights carried over.
RotationEnsemble lift(const SphereEnsemble& nu, const SphereSection& s, std::uint64_t seed);

/// Moves every particle by an independent Haar element of SO(2) (about z).
RotationEnsemble average_so2(const RotationEnsemble& mu, Invariance mode, std::uint64_t seed);
SphereEnsemble average_so2(const SphereEnsemble& nu, std::uint64_t seed);

/// A measure is K-invariant iff it equals its K-average. The ensemble is split
/// in two halves and the energy test compares one half with the K-average of
/// the other, so at least 200 particles are needed.
EnergyTestResult check_invariance(const RotationEnsemble& mu, Invariance kind, const EnergyTestOptions& opts);
EnergyTestResult check_action_invariance(const SphereEnsemble& nu, const EnergyTestOptions& opts);

}  // namespace haarconv
