#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "haarconv/energy.hpp"
#include "haarconv/group.hpp"
#include "haarconv/homogeneous.hpp"
#include "haarconv/measure.hpp"

namespace haarconv {

/// Finite carrier of a convolution algebra: a group G, or X = G/K with a section.
class FiniteCarrier {
 public:
  explicit FiniteCarrier(GroupPtr g);
  explicit FiniteCarrier(SpacePtr x);
  FiniteCarrier(SpacePtr x, FiniteSection s);

  bool is_space() const { return space_ != nullptr; }
  const FiniteGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  /// Throws DomainError on a group carrier.
  const CosetSpace& space() const;
  const SpacePtr& space_ptr() const { return space_; }
  const FiniteSection& section() const;

  const std::string& name() const;
  std::size_t size() const;
  /// delta_e on G, delta_o on X.
  DenseMeasure unit() const;
  DenseMeasure convolve(const DenseMeasure& a, const DenseMeasure& b) const;
  DenseMeasure power(const DenseMeasure& a, unsigned n) const;

 private:
  GroupPtr group_;
  SpacePtr space_;
  std::optional<FiniteSection> section_;
};

/// t -> mu_t on a finite carrier.
using DenseFamily = std::function<DenseMeasure(double)>;

/// Default time grid {k/10 : 0 <= k <= 20}.
std::vector<double> default_grid();
/// Inclusive grid start, start + step, ..., stop (each point computed as start + k*step).
std::vector<double> make_grid(double start, double stop, double step);

/// mu_t = mu_0 * e^{-t rate} sum_n (t rate)^n / n! jump^{*n}.
///
/// The series stops once the Poisson tail mass is below kTail. The initial
/// measure must be idempotent and commute with the jump (this is what makes
/// the family a semigroup); on a coset space the jump must be K-invariant.
class CompoundPoissonSemigroup {
 public:
  static constexpr double kTail = 1e-14;

  CompoundPoissonSemigroup(FiniteCarrier carrier, double rate, DenseMeasure jump,
                           std::optional<DenseMeasure> initial = std::nullopt);

  DenseMeasure at(double t) const;
  /// Index N of the last series term used at time t.
  std::size_t series_terms(double t) const;
  DenseFamily family() const;

  const FiniteCarrier& carrier() const { return carrier_; }
  double rate() const { return rate_; }
  const DenseMeasure& jump() const { return jump_; }
  const DenseMeasure& initial() const { return initial_; }
  /// Same jump and initial measure at a different rate.
  CompoundPoissonSemigroup with_rate(double rate) const;

 private:
  FiniteCarrier carrier_;
  double rate_;
  DenseMeasure jump_;
  DenseMeasure initial_;
};

struct SemigroupCheck {
  double s = 0, t = 0;
  double deviation = 0;  ///< TV(mu_s * mu_t, mu_{s+t})
  bool pass = false;
};

SemigroupCheck semigroup_check(const FiniteCarrier& carrier, const DenseFamily& family, double s, double t,
                               double tol);
/// Every ordered pair (s, t) of grid times.
std::vector<SemigroupCheck> semigroup_check_grid(const FiniteCarrier& carrier, const DenseFamily& family,
                                                 std::span<const double> grid, double tol);
double max_deviation(std::span<const SemigroupCheck> checks);

// --- structure of semigroups on finite G and X ------------------------------

struct DecompositionRow {
  double t = 0;
  double bi_invariance = 0;  ///< H-bi-invariance deviation of mu_t
  double absorption = 0;     ///< max TV(rho_H * mu_t, mu_t), TV(mu_t * rho_H, mu_t)
};

struct DecompositionReport {
  Subgroup h;
  double initial_deviation = 0;  ///< TV(mu_0, rho_H)
  double bi_invariance_deviation = 0;
  double absorption_deviation = 0;
  double tol = 0;
  bool pass = false;
  std::vector<DecompositionRow> rows;
};

/// Recovers H from the support of mu_0 and checks mu_0 = rho_H,
/// H-bi-invariance of every mu_t and rho_H * mu_t = mu_t * rho_H = mu_t on
/// the grid. Throws StructureError when mu_0 is not the Haar measure of a
/// subgroup.
DecompositionReport decompose_semigroup(const GroupPtr& g, const DenseFamily& family,
                                        std::span<const double> grid, double tol);

struct ProjectedSemigroup {
  DenseFamily family;  ///< nu_t = pi mu_t
  std::vector<SemigroupCheck> checks;
  double conjugate_deviation = 0;  ///< max K-conjugate invariance deviation of the input
  bool pass = false;
};

/// Pushes a K-conjugate invariant family on G down to X and checks the
/// semigroup law there. Throws InvarianceError when some mu_t on the grid is
/// not K-conjugate invariant.
ProjectedSemigroup project_semigroup(const SpacePtr& x, const DenseFamily& on_g, std::span<const double> grid,
                                     double tol);

struct LiftedSemigroup {
  DenseFamily family;  ///< mu_t = lift(nu_t)
  std::vector<SemigroupCheck> checks;
  double bi_invariance_deviation = 0;      ///< of the lifted family
  double action_invariance_deviation = 0;  ///< K-invariance of the input on X
  bool pass = false;
};

/// Lifts a semigroup on X to the K-bi-invariant semigroup on G projecting to
/// it. Throws PreconditionError when the input fails the semigroup law on
/// the grid.
LiftedSemigroup lift_semigroup(const SpacePtr& x, const FiniteSection& s, const DenseFamily& on_x,
                               std::span<const double> grid, double tol);

/// Discrete skeleton g_{t_{i+1}} = g_{t_i} h_i with independent h_i ~ mu_{t_{i+1} - t_i}.
/// The family must start at delta_e; times must increase strictly.
std::vector<Element> markov_skeleton(const FiniteGroup& g, const DenseFamily& family,
                                     std::span<const double> times, Element start, std::uint64_t seed);
std::vector<Coset> project_path(const CosetSpace& x, std::span<const Element> path);

// --- idempotents --------------------------------------------------------------

/// Randomized fixed-point search: starts from (delta_e + nu) / 2 for a random
/// nu supported on at most max_support elements and squares until mu * mu = mu
/// (the lazy start keeps the walk aperiodic).
DenseMeasure idempotent_search(const FiniteGroup& g, std::uint64_t seed, std::size_t max_support = 3);

struct IdempotentReport {
  std::vector<Element> support;
  bool subgroup_support = false;
  double uniform_deviation = 1;     ///< TV to the Haar measure of the support, 1 if not a subgroup
  double idempotent_deviation = 0;  ///< TV(mu * mu, mu)
};
IdempotentReport classify_idempotent(const GroupPtr& g, const DenseMeasure& mu, double eps = 1e-12);

// --- heat semigroup on SO(3) ------------------------------------------------

inline constexpr double kHeatMinTime = 0.05;
inline constexpr int kHeatDefaultLmax = 30;
inline constexpr std::size_t kHeatGridNodes = 2048;

/// k_t(theta) = sum_{l <= l_max} (2l+1) e^{-l(l+1)t} sin((2l+1)theta/2) / sin(theta/2),
/// the heat kernel density w.r.t. Haar measure as a function of rotation angle.
/// Throws UnsupportedError for t < 0.05 or l_max < 10.
double heat_kernel(double theta, double t, int l_max = kHeatDefaultLmax);
/// Angle density k_t(theta) (1 - cos theta) / pi on [0, pi].
double heat_angle_density(double theta, double t, int l_max = kHeatDefaultLmax);
/// sum_{l > l_max} (2l+1)^2 e^{-l(l+1)t}, bounding the truncation error of k_t.
double heat_truncation_bound(double t, int l_max);

/// Tabulated angle CDF of the heat kernel used for inverse-CDF sampling.
class HeatAngleTable {
 public:
  explicit HeatAngleTable(double t, int l_max = kHeatDefaultLmax, std::size_t nodes = kHeatGridNodes);
  double cdf(double theta) const;
  double quantile(double u) const;

 private:
  std::vector<double> theta_;
  std::vector<double> cdf_;
};

/// n rotations from the heat semigroup at time t: Haar axis, angle by inverse
/// CDF. For 0 < t < 0.05 each sample is a composition of small Gaussian
/// rotations (rotation vector covariance 2 dt I, dt <= 1e-4) instead.
RotationEnsemble heat_sample(double t, std::size_t n, std::uint64_t seed, int l_max = kHeatDefaultLmax);

/// heat(s) * heat(t) against heat(s + t), by the energy test.
EnergyTestResult heat_semigroup_check(double s, double t, std::size_t n, std::uint64_t seed,
                                      const EnergyTestOptions& opts);
/// Same law for the projected family on S^2, using the sphere convolution.
EnergyTestResult heat_projection_check(double s, double t, std::size_t n, std::uint64_t seed,
                                       const EnergyTestOptions& opts);

/// Skeleton paths of the heat process; one path per entry, each of length times.size().
std::vector<std::vector<Rotation>> heat_skeleton(std::span<const double> times, const Rotation& start,
                                                 std::size_t paths, std::uint64_t seed);

}  // namespace haarconv
