#include "haarconv/kernels.hpp"

#include <algorithm>
#include <vector>

namespace haarconv::kernels {

namespace {

constexpr std::size_t kParallelThreshold = 64;

}  // namespace

namespace serial {

void group_convolve(const FiniteGroup& g, std::span<const double> a, std::span<const double> b,
                    std::span<double> out) {
  const std::size_t n = g.order();
  std::fill(out.begin(), out.end(), 0.0);
  for (Element x = 0; x < n; ++x) {
    if (a[x] == 0) continue;
    for (Element y = 0; y < n; ++y) {
      if (b[y] == 0) continue;
      out[g.multiply(x, y)] += a[x] * b[y];
    }
  }
}

void coset_convolve(const CosetSpace& space, std::span<const Element> section,
                    std::span<const double> a, std::span<const double> b, std::span<double> out) {
  const FiniteGroup& g = space.group();
  const auto k = space.subgroup().members();
  const double inv_k = 1.0 / static_cast<double>(k.size());
  std::fill(out.begin(), out.end(), 0.0);
  for (Coset x = 0; x < space.size(); ++x) {
    if (a[x] == 0) continue;
    for (Element kk : k) {
      const Element s = g.multiply(section[x], kk);
      for (Coset y = 0; y < space.size(); ++y) {
        if (b[y] == 0) continue;
        out[space.act(s, y)] += a[x] * inv_k * b[y];
      }
    }
  }
}

void coset_convolve_kinvariant(const CosetSpace& space, std::span<const Element> section,
                               std::span<const double> a, std::span<const double> b,
                               std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (Coset x = 0; x < space.size(); ++x) {
    if (a[x] == 0) continue;
    for (Coset y = 0; y < space.size(); ++y) {
      if (b[y] == 0) continue;
      out[space.act(section[x], y)] += a[x] * b[y];
    }
  }
}

double block_sum(std::span<const double> d, std::size_t n, std::span<const std::size_t> idx) {
  double s = 0;
  for (std::size_t i : idx)
    for (std::size_t j : idx) s += d[i * n + j];
  return s;
}

}  // namespace serial

namespace parallel {

void group_convolve(const FiniteGroup& g, std::span<const double> a, std::span<const double> b,
                    std::span<double> out) {
  const std::size_t n = g.order();
  std::vector<Element> support;
  for (Element x = 0; x < n; ++x)
    if (a[x] != 0) support.push_back(x);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::size_t z = 0; z < n; ++z) {
    double s = 0;
    for (Element x : support) s += a[x] * b[g.multiply(g.inverse(x), z)];
    out[z] = s;
  }
}

void coset_convolve(const CosetSpace& space, std::span<const Element> section,
                    std::span<const double> a, std::span<const double> b, std::span<double> out) {
  const FiniteGroup& g = space.group();
  const auto k = space.subgroup().members();
  const double inv_k = 1.0 / static_cast<double>(k.size());
  // (S(x) k)^-1 for every x in the support of a and every k.
  std::vector<Element> pullback;
  std::vector<double> mass;
  for (Coset x = 0; x < space.size(); ++x) {
    if (a[x] == 0) continue;
    for (Element kk : k) {
      pullback.push_back(g.inverse(g.multiply(section[x], kk)));
      mass.push_back(a[x] * inv_k);
    }
  }
  const std::size_t m = space.size();
#pragma omp parallel for schedule(static) if (m * pullback.size() >= kParallelThreshold * kParallelThreshold)
  for (std::size_t z = 0; z < m; ++z) {
    double s = 0;
    for (std::size_t i = 0; i < pullback.size(); ++i) s += mass[i] * b[space.act(pullback[i], z)];
    out[z] = s;
  }
}

void coset_convolve_kinvariant(const CosetSpace& space, std::span<const Element> section,
                               std::span<const double> a, std::span<const double> b,
                               std::span<double> out) {
  const FiniteGroup& g = space.group();
  const std::size_t m = space.size();
#pragma omp parallel for schedule(static) if (m >= kParallelThreshold)
  for (std::size_t z = 0; z < m; ++z) {
    double s = 0;
    for (Coset x = 0; x < m; ++x)
      if (a[x] != 0) s += a[x] * b[space.act(g.inverse(section[x]), z)];
    out[z] = s;
  }
}

double block_sum(std::span<const double> d, std::size_t n, std::span<const std::size_t> idx) {
  std::vector<double> rows(idx.size());
#pragma omp parallel for schedule(static) if (idx.size() >= kParallelThreshold)
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const double* row = d.data() + idx[r] * n;
    double s = 0;
    for (std::size_t j : idx) s += row[j];
    rows[r] = s;
  }
  double s = 0;
  for (double v : rows) s += v;
  return s;
}

}  // namespace parallel

}  // namespace haarconv::kernels
