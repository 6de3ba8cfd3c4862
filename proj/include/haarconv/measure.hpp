#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "haarconv/group.hpp"
#include "haarconv/homogeneous.hpp"
#include "haarconv/rotation.hpp"

namespace haarconv {

/// Weight sums may drift by at most this much before renormalization.
inline constexpr double kNormalizationDrift = 1e-9;
/// Two dense measures are equal when their TV distance is at most this.
inline constexpr double kDenseEquality = 1e-12;

/// Probability measure on a finite carrier (a group or a coset space),
/// identified by name. Weights are renormalized on construction.
class DenseMeasure {
 public:
  /// Weights must be nonnegative and sum to 1 within kNormalizationDrift.
  DenseMeasure(std::string carrier, std::vector<double> weights);
  /// Any nonnegative weights with positive total.
  static DenseMeasure normalized(std::string carrier, std::vector<double> weights);
  static DenseMeasure point_mass(std::string carrier, std::size_t size, std::size_t at);
  static DenseMeasure uniform(std::string carrier, std::size_t size);

  const std::string& carrier() const { return carrier_; }
  std::size_t size() const { return weights_.size(); }
  std::span<const double> weights() const { return weights_; }
  double operator[](std::size_t i) const { return weights_[i]; }
  /// Indices with weight strictly above eps.
  std::vector<std::size_t> support(double eps = 0.0) const;

 private:
  DenseMeasure() = default;
  void renormalize(double tolerance);

  std::string carrier_;
  std::vector<double> weights_;
};

/// Total variation distance; throws DomainError on carrier mismatch.
double tv_distance(const DenseMeasure& a, const DenseMeasure& b);

/// Throws DomainError unless the measure lives on the named carrier with the given size.
void require_carrier(const DenseMeasure& m, const std::string& carrier, std::size_t size);

template <class Point>
struct PointTraits;

template <>
struct PointTraits<Rotation> {
  static constexpr const char* carrier = "SO3";
};

template <>
struct PointTraits<Vec3> {
  static constexpr const char* carrier = "S2";
};

/// Weighted particle ensemble on SO(3) or S^2.
///
/// Zero-weight particles are dropped; the seed records where the particles
/// came from.
template <class Point>
class Ensemble {
 public:
  Ensemble(std::vector<Point> points, std::vector<double> weights, std::uint64_t seed);
  /// Equal weights.
  Ensemble(std::vector<Point> points, std::uint64_t seed);

  static constexpr const char* carrier() { return PointTraits<Point>::carrier; }
  std::size_t size() const { return points_.size(); }
  std::span<const Point> points() const { return points_; }
  std::span<const double> weights() const { return weights_; }
  std::uint64_t seed() const { return seed_; }
  bool uniform_weights() const { return uniform_; }

  /// Particle drawn by weight from u in [0, 1).
  const Point& sample(double u) const;

 private:
  void init();

  std::vector<Point> points_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
  std::uint64_t seed_ = 0;
  bool uniform_ = false;
};

using RotationEnsemble = Ensemble<Rotation>;
using SphereEnsemble = Ensemble<Vec3>;

extern template class Ensemble<Rotation>;
extern template class Ensemble<Vec3>;

/// Haar measure of a subgroup, as a dense measure on the parent group.
DenseMeasure haar(const Subgroup& k);
/// Point mass at the identity of G.
DenseMeasure delta_identity(const FiniteGroup& g);
/// Point mass at the origin of X.
DenseMeasure delta_origin(const CosetSpace& x);

}  // namespace haarconv
