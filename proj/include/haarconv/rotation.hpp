#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "haarconv/random.hpp"

namespace haarconv {

struct Vec3 {
  double x = 0, y = 0, z = 0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const;
};

/// Element of SO(3) stored as a unit quaternion (w, x, y, z); q and -q name
/// the same rotation. Every constructor and product renormalizes.
class Rotation {
 public:
  Rotation() = default;
  Rotation(double w, double x, double y, double z);

  static Rotation identity() { return {}; }
  static Rotation from_axis_angle(const Vec3& axis, double angle);
  static Rotation about_z(double angle);
  /// Exponential of a rotation vector (axis * angle).
  static Rotation from_rotation_vector(const Vec3& v);

  double w() const { return w_; }
  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }

  Rotation operator*(const Rotation& o) const;
  Rotation inverse() const { return Rotation(w_, -x_, -y_, -z_, Unchecked{}); }
  Vec3 apply(const Vec3& v) const;

  /// Rotation angle in [0, pi].
  double angle() const;
  /// Row-major rotation matrix.
  std::array<double, 9> matrix() const;
  /// Equality modulo the sign of the quaternion.
  bool approx_equal(const Rotation& o, double tol) const;

 private:
  struct Unchecked {};
  Rotation(double w, double x, double y, double z, Unchecked)
      : w_(w), x_(x), y_(y), z_(z) {}

  double w_ = 1, x_ = 0, y_ = 0, z_ = 0;
};

inline Rotation multiply(const Rotation& g, const Rotation& h) { return g * h; }
inline Rotation inverse(const Rotation& g) { return g.inverse(); }
inline Rotation conjugate(const Rotation& g, const Rotation& x) { return g * x * g.inverse(); }

/// Geodesic angle between rotations (invariant under q -> -q).
double distance(const Rotation& a, const Rotation& b);
/// Chordal distance on the sphere.
double distance(const Vec3& a, const Vec3& b);

/// Haar-uniform rotation from four standard normals.
Rotation haar_rotation(CounterRng& rng);
/// Uniform point on the unit sphere.
Vec3 uniform_sphere_point(CounterRng& rng);

/// n i.i.d. Haar rotations; particle i only depends on (seed, i).
std::vector<Rotation> haar_sample_so3(std::size_t n, std::uint64_t seed);

}  // namespace haarconv
