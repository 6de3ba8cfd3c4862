#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "haarconv/empirical_ops.hpp"
#include "haarconv/error.hpp"
#include "haarconv/random.hpp"
#include "haarconv/semigroup.hpp"

namespace haarconv {

namespace {

void require_heat_domain(double t, int l_max) {
  if (!(t >= kHeatMinTime)) throw UnsupportedError("heat kernel series needs t >= 0.05");
  if (l_max < 10) throw UnsupportedError("heat kernel series needs l_max >= 10");
}

// Small-time fallback: composition of Gaussian rotation increments.
constexpr double kWalkStep = 1e-4;

}  // namespace

double heat_kernel(double theta, double t, int l_max) {
  require_heat_domain(t, l_max);
  // sin((2l+1)theta/2) / sin(theta/2) = U_{2l}(cos(theta/2)), Chebyshev of the second kind.
  const double c = std::cos(theta / 2);
  double u_prev = 1.0;  // U_{n-1}
  double u = 2.0 * c;   // U_n
  double sum = 1.0;
  for (int l = 1; l <= l_max; ++l) {
    for (int step = 0; step < 2; ++step) {
      const double next = 2.0 * c * u - u_prev;
      u_prev = u;
      u = next;
    }
    // u now holds U_{2l+1}; U_{2l} is u_prev.
    const double dl = l;
    sum += (2 * dl + 1) * std::exp(-dl * (dl + 1) * t) * u_prev;
  }
  return sum;
}

double heat_angle_density(double theta, double t, int l_max) {
  return heat_kernel(theta, t, l_max) * (1.0 - std::cos(theta)) / std::numbers::pi;
}

double heat_truncation_bound(double t, int l_max) {
  double s = 0;
  for (int l = l_max + 1;; ++l) {
    const double dl = l;
    const double term = (2 * dl + 1) * (2 * dl + 1) * std::exp(-dl * (dl + 1) * t);
    s += term;
    if (term < 1e-300 || term < 1e-17 * s) break;
  }
  return s;
}

HeatAngleTable::HeatAngleTable(double t, int l_max, std::size_t nodes) {
  require_heat_domain(t, l_max);
  if (nodes < 2) throw ArgumentError("angle table needs at least two nodes");
  theta_.resize(nodes);
  cdf_.resize(nodes);
  std::vector<double> p(nodes);
  for (std::size_t j = 0; j < nodes; ++j) {
    theta_[j] = std::numbers::pi * static_cast<double>(j) / static_cast<double>(nodes - 1);
    p[j] = std::max(0.0, heat_angle_density(theta_[j], t, l_max));
  }
  cdf_[0] = 0;
  for (std::size_t j = 1; j < nodes; ++j)
    cdf_[j] = cdf_[j - 1] + 0.5 * (p[j] + p[j - 1]) * (theta_[j] - theta_[j - 1]);
  const double total = cdf_.back();
  for (double& c : cdf_) c /= total;
}

double HeatAngleTable::cdf(double theta) const {
  if (theta <= 0) return 0;
  if (theta >= std::numbers::pi) return 1;
  const auto it = std::upper_bound(theta_.begin(), theta_.end(), theta);
  const std::size_t j = static_cast<std::size_t>(it - theta_.begin());
  const double f = (theta - theta_[j - 1]) / (theta_[j] - theta_[j - 1]);
  return cdf_[j - 1] + f * (cdf_[j] - cdf_[j - 1]);
}

double HeatAngleTable::quantile(double u) const {
  if (u <= 0) return 0;
  if (u >= 1) return std::numbers::pi;
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const std::size_t j = std::clamp<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), 1, cdf_.size() - 1);
  const double span = cdf_[j] - cdf_[j - 1];
  const double f = span > 0 ? (u - cdf_[j - 1]) / span : 0.0;
  return theta_[j - 1] + f * (theta_[j] - theta_[j - 1]);
}

RotationEnsemble heat_sample(double t, std::size_t n, std::uint64_t seed, int l_max) {
  if (n == 0) throw ArgumentError("heat_sample needs n >= 1");
  if (!(t >= 0) || !std::isfinite(t)) throw ArgumentError("heat time must be finite and nonnegative");
  std::vector<Rotation> out(n);
  if (t == 0) return RotationEnsemble(std::move(out), seed);

  if (t < kHeatMinTime) {
    const auto steps = static_cast<std::size_t>(std::ceil(t / kWalkStep));
    const double sigma = std::sqrt(2.0 * t / static_cast<double>(steps));
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
      CounterRng rng(seed, streams::heat, i);
      Rotation g;
      for (std::size_t k = 0; k < steps; ++k)
        g = g * Rotation::from_rotation_vector({sigma * rng.normal(), sigma * rng.normal(), sigma * rng.normal()});
      out[i] = g;
    }
    return RotationEnsemble(std::move(out), seed);
  }

  const HeatAngleTable table(t, l_max);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    CounterRng rng(seed, streams::heat, i);
    const Vec3 axis = uniform_sphere_point(rng);
    out[i] = Rotation::from_axis_angle(axis, table.quantile(rng.uniform()));
  }
  return RotationEnsemble(std::move(out), seed);
}

EnergyTestResult heat_semigroup_check(double s, double t, std::size_t n, std::uint64_t seed,
                                      const EnergyTestOptions& opts) {
  const RotationEnsemble a = heat_sample(s, n, splitmix64(seed ^ 0x1));
  const RotationEnsemble b = heat_sample(t, n, splitmix64(seed ^ 0x2));
  const RotationEnsemble ab = convolve(a, b, {n, splitmix64(seed ^ 0x3)});
  const RotationEnsemble direct = heat_sample(s + t, n, splitmix64(seed ^ 0x4));
  EnergyTestOptions o = opts;
  o.seed = splitmix64(seed ^ 0x5);
  return energy_distance_test(ab, direct, o);
}

EnergyTestResult heat_projection_check(double s, double t, std::size_t n, std::uint64_t seed,
                                       const EnergyTestOptions& opts) {
  const SphereEnsemble a = project(heat_sample(s, n, splitmix64(seed ^ 0x11)));
  const SphereEnsemble b = project(heat_sample(t, n, splitmix64(seed ^ 0x12)));
  const SphereEnsemble ab = convolve(a, b, SphereSection{}, {n, splitmix64(seed ^ 0x13)});
  const SphereEnsemble direct = project(heat_sample(s + t, n, splitmix64(seed ^ 0x14)));
  EnergyTestOptions o = opts;
  o.seed = splitmix64(seed ^ 0x15);
  return energy_distance_test(ab, direct, o);
}

std::vector<std::vector<Rotation>> heat_skeleton(std::span<const double> times, const Rotation& start,
                                                 std::size_t paths, std::uint64_t seed) {
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw ArgumentError("skeleton times must increase strictly");
  std::vector<std::vector<Rotation>> out(paths, std::vector<Rotation>(times.size(), start));
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double dt = times[i] - times[i - 1];
    const RotationEnsemble steps = heat_sample(dt, paths, splitmix64(seed + i));
    for (std::size_t p = 0; p < paths; ++p) out[p][i] = out[p][i - 1] * steps.points()[p];
  }
  return out;
}

}  // namespace haarconv
