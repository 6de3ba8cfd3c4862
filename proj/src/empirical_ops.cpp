#include "haarconv/empirical_ops.hpp"

#include <numbers>
#include <utility>
#include <vector>

#include "haarconv/error.hpp"
#include "haarconv/random.hpp"

namespace haarconv {

namespace {

Rotation random_so2(std::uint64_t seed, std::uint64_t stream, std::size_t i) {
  CounterRng rng(seed, stream, i);
  return Rotation::about_z(2.0 * std::numbers::pi * rng.uniform());
}

void require_budget(const ParticleBudget& b) {
  if (b.particles == 0) throw ArgumentError("particle budget must be positive");
}

}  // namespace

RotationEnsemble convolve(const RotationEnsemble& mu, const RotationEnsemble& nu, const ParticleBudget& budget) {
  require_budget(budget);
  std::vector<Rotation> out(budget.particles);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < out.size(); ++i) {
    CounterRng l(budget.seed, streams::resample_lhs, i);
    CounterRng r(budget.seed, streams::resample_rhs, i);
    out[i] = mu.sample(l.uniform()) * nu.sample(r.uniform());
  }
  return RotationEnsemble(std::move(out), budget.seed);
}

SphereEnsemble convolve(const SphereEnsemble& mu, const SphereEnsemble& nu, const SphereSection& s,
                        const ParticleBudget& budget) {
  require_budget(budget);
  std::vector<Vec3> out(budget.particles);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < out.size(); ++i) {
    CounterRng l(budget.seed, streams::resample_lhs, i);
    CounterRng r(budget.seed, streams::resample_rhs, i);
    const Vec3& x = mu.sample(l.uniform());
    const Vec3& y = nu.sample(r.uniform());
    const Rotation g = s(x) * random_so2(budget.seed, streams::subgroup_k, i);
    out[i] = sphere::action(g, y);
  }
  return SphereEnsemble(std::move(out), budget.seed);
}

RotationEnsemble convolve_power(const RotationEnsemble& mu, unsigned n, const ParticleBudget& budget) {
  if (n == 0) return RotationEnsemble({Rotation::identity()}, budget.seed);
  RotationEnsemble result = mu;
  for (unsigned i = 1; i < n; ++i) {
    ParticleBudget step = budget;
    step.seed = splitmix64(budget.seed + i);
    result = convolve(result, mu, step);
  }
  return result;
}

RotationEnsemble pushforward(const RotationEnsemble& mu, Translation map, const Rotation& by) {
  std::vector<Rotation> pts(mu.points().begin(), mu.points().end());
  for (auto& p : pts) {
    switch (map) {
      case Translation::left: p = by * p; break;
      case Translation::right: p = p * by; break;
      case Translation::conjugate: p = conjugate(by, p); break;
    }
  }
  return RotationEnsemble(std::move(pts), {mu.weights().begin(), mu.weights().end()}, mu.seed());
}

SphereEnsemble pushforward(const SphereEnsemble& nu, const Rotation& by) {
  std::vector<Vec3> pts(nu.points().begin(), nu.points().end());
  for (auto& p : pts) p = sphere::action(by, p);
  return SphereEnsemble(std::move(pts), {nu.weights().begin(), nu.weights().end()}, nu.seed());
}

SphereEnsemble project(const RotationEnsemble& mu) {
  std::vector<Vec3> pts(mu.size());
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = sphere::project(mu.points()[i]);
  return SphereEnsemble(std::move(pts), {mu.weights().begin(), mu.weights().end()}, mu.seed());
}

RotationEnsemble lift(const SphereEnsemble& nu, const SphereSection& s, std::uint64_t seed) {
  std::vector<Rotation> pts(nu.size());
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = s(nu.points()[i]) * random_so2(seed, streams::lift, i);
  return RotationEnsemble(std::move(pts), {nu.weights().begin(), nu.weights().end()}, seed);
}

RotationEnsemble average_so2(const RotationEnsemble& mu, Invariance mode, std::uint64_t seed) {
  if (mode == Invariance::action) throw ArgumentError("action averaging applies to sphere ensembles");
  std::vector<Rotation> pts(mu.points().begin(), mu.points().end());
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Rotation k = random_so2(seed, streams::average, 2 * i);
    switch (mode) {
      case Invariance::left: pts[i] = k * pts[i]; break;
      case Invariance::right: pts[i] = pts[i] * k; break;
      case Invariance::conjugate: pts[i] = conjugate(k, pts[i]); break;
      case Invariance::bi: pts[i] = k * pts[i] * random_so2(seed, streams::average, 2 * i + 1); break;
      case Invariance::action: break;
    }
  }
  return RotationEnsemble(std::move(pts), {mu.weights().begin(), mu.weights().end()}, seed);
}

SphereEnsemble average_so2(const SphereEnsemble& nu, std::uint64_t seed) {
  std::vector<Vec3> pts(nu.points().begin(), nu.points().end());
  for (std::size_t i = 0; i < pts.size(); ++i)
    pts[i] = sphere::action(random_so2(seed, streams::average, i), pts[i]);
  return SphereEnsemble(std::move(pts), {nu.weights().begin(), nu.weights().end()}, seed);
}

namespace {

// Splits by index parity so the two samples handed to the energy test are
// independent draws.
template <class Point>
std::pair<Ensemble<Point>, Ensemble<Point>> halves(const Ensemble<Point>& e) {
  std::vector<Point> p[2];
  std::vector<double> w[2];
  for (std::size_t i = 0; i < e.size(); ++i) {
    p[i % 2].push_back(e.points()[i]);
    w[i % 2].push_back(e.weights()[i]);
  }
  return {Ensemble<Point>(std::move(p[0]), std::move(w[0]), e.seed()),
          Ensemble<Point>(std::move(p[1]), std::move(w[1]), e.seed())};
}

}  // namespace

EnergyTestResult check_invariance(const RotationEnsemble& mu, Invariance kind, const EnergyTestOptions& opts) {
  const auto [a, b] = halves(mu);
  return energy_distance_test(a, average_so2(b, kind, splitmix64(opts.seed)), opts);
}

EnergyTestResult check_action_invariance(const SphereEnsemble& nu, const EnergyTestOptions& opts) {
  const auto [a, b] = halves(nu);
  return energy_distance_test(a, average_so2(b, splitmix64(opts.seed)), opts);
}

}  // namespace haarconv
