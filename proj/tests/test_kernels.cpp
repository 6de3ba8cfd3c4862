#include <doctest.h>

#include <omp.h>

#include "haarconv/empirical_ops.hpp"
#include "haarconv/energy.hpp"
#include "haarconv/kernels.hpp"
#include "haarconv/semigroup.hpp"

using namespace haarconv;

namespace {

std::vector<double> random_weights(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed, 0, 0);
  std::vector<double> w(n);
  double t = 0;
  for (double& v : w) t += v = rng.uniform() < 0.2 ? 0.0 : rng.uniform();
  for (double& v : w) v /= t;
  return w;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

template <class F>
auto with_threads(int n, F f) {
  const int before = omp_get_max_threads();
  omp_set_num_threads(n);
  auto r = f();
  omp_set_num_threads(before);
  return r;
}

}  // namespace

TEST_CASE("serial and parallel group convolution agree") {
  for (const GroupPtr& g : {symmetric_group(4), dihedral_d4(), cyclic_group(64)})
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto a = random_weights(g->order(), seed), b = random_weights(g->order(), seed + 100);
      std::vector<double> s(g->order()), p(g->order());
      kernels::serial::group_convolve(*g, a, b, s);
      kernels::parallel::group_convolve(*g, a, b, p);
      CHECK(max_diff(s, p) <= 1e-15);
    }
}

TEST_CASE("serial and parallel coset convolution agree") {
  const GroupPtr s4 = symmetric_group(4);
  for (const auto& k : subgroups(s4)) {
    const CosetSpace x(k);
    const FiniteSection sec = FiniteSection::randomized(x, 5);
    const auto a = random_weights(x.size(), 1), b = random_weights(x.size(), 2);
    std::vector<double> s(x.size()), p(x.size()), sk(x.size()), pk(x.size());
    kernels::serial::coset_convolve(x, sec.table(), a, b, s);
    kernels::parallel::coset_convolve(x, sec.table(), a, b, p);
    kernels::serial::coset_convolve_kinvariant(x, sec.table(), a, b, sk);
    kernels::parallel::coset_convolve_kinvariant(x, sec.table(), a, b, pk);
    CHECK(max_diff(s, p) <= 1e-15);
    CHECK(max_diff(sk, pk) <= 1e-15);
  }
}

TEST_CASE("distance matrices and block sums agree") {
  const auto pts = haar_sample_so3(300, 3);
  const auto s = kernels::distance_matrix_serial<Rotation>(pts);
  const auto p = kernels::distance_matrix_parallel<Rotation>(pts);
  CHECK(s == p);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < 300; i += 3) idx.push_back(i);
  CHECK(kernels::serial::block_sum(s, 300, idx) == doctest::Approx(kernels::parallel::block_sum(p, 300, idx)).epsilon(1e-13));
}

TEST_CASE("results do not depend on the thread count") {
  const GroupPtr g = cyclic_group(64);
  const auto a = random_weights(64, 7), b = random_weights(64, 8);
  auto conv = [&] {
    std::vector<double> out(64);
    kernels::parallel::group_convolve(*g, a, b, out);
    return out;
  };
  CHECK(with_threads(1, conv) == with_threads(4, conv));

  auto heat = [] {
    const auto e = heat_sample(0.4, 2000, 9);
    std::vector<double> q;
    for (const auto& r : e.points()) q.insert(q.end(), {r.w(), r.x(), r.y(), r.z()});
    return q;
  };
  CHECK(with_threads(1, heat) == with_threads(4, heat));

  auto energy = [] {
    const RotationEnsemble x(haar_sample_so3(400, 1), 1), y(haar_sample_so3(400, 2), 2);
    EnergyTestOptions o;
    o.seed = 3;
    const auto r = energy_distance_test(x, y, o);
    return std::vector<double>{r.statistic, r.p_value};
  };
  CHECK(with_threads(1, energy) == with_threads(4, energy));

  auto product = [] {
    const RotationEnsemble x(haar_sample_so3(500, 4), 4), y(haar_sample_so3(700, 5), 5);
    const auto r = convolve(x, y, {1000, 6});
    std::vector<double> q;
    for (const auto& p : r.points()) q.insert(q.end(), {p.w(), p.x(), p.y(), p.z()});
    return q;
  };
  CHECK(with_threads(1, product) == with_threads(4, product));
}
