#pragma once

// Inner loops behind the measure operations. Each kernel has a serial
// reference (scatter form, the literal double/triple sum) and an OpenMP
// version (gather form, one output cell per iteration, no atomics). The
// library calls the parallel versions; tests compare the two and the
// benchmark times them.

#include <span>
#include <vector>

#include "haarconv/group.hpp"
#include "haarconv/homogeneous.hpp"

namespace haarconv::kernels {

namespace serial {

/// out(z) = sum_{xy=z} a(x) b(y)
void group_convolve(const FiniteGroup& g, std::span<const double> a, std::span<const double> b,
                    std::span<double> out);
/// out(z) = |K|^-1 sum_{x,k,y : S(x) k y = z} a(x) b(y)
void coset_convolve(const CosetSpace& x, std::span<const Element> section, std::span<const double> a,
                    std::span<const double> b, std::span<double> out);
/// out(z) = sum_{x,y : S(x) y = z} a(x) b(y)
void coset_convolve_kinvariant(const CosetSpace& x, std::span<const Element> section,
                               std::span<const double> a, std::span<const double> b,
                               std::span<double> out);
/// Sum of D(i, j) over i, j in idx for a row-major n x n matrix.
double block_sum(std::span<const double> d, std::size_t n, std::span<const std::size_t> idx);

}  // namespace serial

namespace parallel {

void group_convolve(const FiniteGroup& g, std::span<const double> a, std::span<const double> b,
                    std::span<double> out);
void coset_convolve(const CosetSpace& x, std::span<const Element> section, std::span<const double> a,
                    std::span<const double> b, std::span<double> out);
void coset_convolve_kinvariant(const CosetSpace& x, std::span<const Element> section,
                               std::span<const double> a, std::span<const double> b,
                               std::span<double> out);
/// Row sums are computed in parallel and combined serially, so the result
/// does not depend on the thread count.
double block_sum(std::span<const double> d, std::size_t n, std::span<const std::size_t> idx);

}  // namespace parallel

/// Row-major matrix of pairwise distances.
template <class Point>
std::vector<double> distance_matrix_serial(std::span<const Point> pts) {
  const std::size_t n = pts.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = distance(pts[i], pts[j]);
  return d;
}

template <class Point>
std::vector<double> distance_matrix_parallel(std::span<const Point> pts) {
  const std::size_t n = pts.size();
  std::vector<double> d(n * n, 0.0);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) d[i * n + j] = distance(pts[i], pts[j]);
  return d;
}

}  // namespace haarconv::kernels
