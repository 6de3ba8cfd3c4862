#include "haarconv/energy.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "haarconv/error.hpp"
#include "haarconv/kernels.hpp"
#include "haarconv/random.hpp"

namespace haarconv {

namespace {

// Equal weights: m distinct particles (partial Fisher-Yates). Repeated draws
// would put ties inside one side only and break exchangeability of the pooled
// sample. Weighted ensembles are drawn by weight, with replacement.
template <class Point>
std::vector<Point> subsample(const Ensemble<Point>& e, std::size_t m, std::uint64_t seed) {
  const std::size_t n = e.size();
  if (e.uniform_weights() && n <= m) return {e.points().begin(), e.points().end()};
  std::vector<Point> out(m);
  if (e.uniform_weights()) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < m; ++i) {
      CounterRng rng(seed, streams::energy_subsample, i);
      const std::size_t j = std::min(n - 1, i + static_cast<std::size_t>(rng.uniform() * double(n - i)));
      std::swap(idx[i], idx[j]);
      out[i] = e.points()[idx[i]];
    }
    return out;
  }
  for (std::size_t i = 0; i < m; ++i) {
    CounterRng rng(seed, streams::energy_subsample, i);
    out[i] = e.sample(rng.uniform());
  }
  return out;
}

struct BlockSums {
  double xx, yy, xy;
};

double energy(const BlockSums& s, double n, double m) {
  return 2.0 * s.xy / (n * m) - s.xx / (n * n) - s.yy / (m * m);
}

}  // namespace

template <class Point>
EnergyTestResult energy_distance_test(const Ensemble<Point>& a, const Ensemble<Point>& b,
                                      const EnergyTestOptions& opts) {
  if (a.size() < kMinEnergyParticles || b.size() < kMinEnergyParticles)
    throw UnsupportedError("energy test needs at least 100 particles per side");
  if (opts.max_points < kMinEnergyParticles)
    throw UnsupportedError("energy test needs max_points >= 100");
  if (opts.permutations == 0) throw ArgumentError("energy test needs at least one permutation");

  const std::size_t m_cap = opts.max_points;
  const std::vector<Point> xs = subsample(a, std::min(m_cap, a.size()), opts.seed);
  const std::vector<Point> ys = subsample(b, std::min(m_cap, b.size()), opts.seed);
  const std::size_t n = xs.size(), m = ys.size(), total = n + m;

  std::vector<Point> pooled = xs;
  pooled.insert(pooled.end(), ys.begin(), ys.end());
  const std::vector<double> d = kernels::distance_matrix_parallel<Point>(pooled);

  std::vector<double> row(total, 0.0);
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < total; ++j) row[i] += d[i * total + j];
  double all = 0;
  for (double r : row) all += r;

  // Observed statistic, summed block by block.
  BlockSums obs{0, 0, 0};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) obs.xx += d[i * total + j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) obs.yy += d[(n + i) * total + n + j];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) obs.xy += d[i * total + n + j];
  const double stat = energy(obs, double(n), double(m));

  const std::size_t perms = opts.permutations;
  std::vector<double> null(perms);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t p = 0; p < perms; ++p) {
    CounterRng rng(opts.seed, streams::energy_permutation, p);
    std::vector<std::size_t> idx(total);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.uniform() * double(total - i));
      std::swap(idx[i], idx[std::min(j, total - 1)]);
    }
    idx.resize(n);
    std::sort(idx.begin(), idx.end());
    BlockSums s{};
    s.xx = kernels::serial::block_sum(d, total, idx);
    double x_rows = 0;
    for (std::size_t i : idx) x_rows += row[i];
    s.xy = x_rows - s.xx;
    s.yy = all - 2.0 * x_rows + s.xx;
    null[p] = energy(s, double(n), double(m));
  }

  const double slack = 1e-12 * std::max(1.0, std::abs(stat));
  const auto exceed = std::count_if(null.begin(), null.end(), [&](double v) { return v >= stat - slack; });
  EnergyTestResult r;
  r.statistic = stat;
  r.p_value = double(1 + exceed) / double(perms + 1);
  r.pass = r.p_value > opts.level;
  r.points = std::min(n, m);
  return r;
}

template EnergyTestResult energy_distance_test(const RotationEnsemble&, const RotationEnsemble&,
                                               const EnergyTestOptions&);
template EnergyTestResult energy_distance_test(const SphereEnsemble&, const SphereEnsemble&,
                                               const EnergyTestOptions&);

}  // namespace haarconv
