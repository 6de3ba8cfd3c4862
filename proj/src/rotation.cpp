#include "haarconv/rotation.hpp"

#include <algorithm>

#include "haarconv/error.hpp"

namespace haarconv {

Vec3 Vec3::normalized() const {
  const double n = norm();
  if (!(n > 0)) throw ArgumentError("cannot normalize a zero vector");
  return {x / n, y / n, z / n};
}

Rotation::Rotation(double w, double x, double y, double z) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (!(n > 0) || !std::isfinite(n)) throw ArgumentError("quaternion must be finite and nonzero");
  w_ = w / n;
  x_ = x / n;
  y_ = y / n;
  z_ = z / n;
}

Rotation Rotation::from_axis_angle(const Vec3& axis, double angle) {
  const Vec3 u = axis.normalized();
  const double s = std::sin(angle / 2);
  return Rotation(std::cos(angle / 2), u.x * s, u.y * s, u.z * s);
}

Rotation Rotation::about_z(double angle) {
  return Rotation(std::cos(angle / 2), 0, 0, std::sin(angle / 2));
}

Rotation Rotation::from_rotation_vector(const Vec3& v) {
  const double theta = v.norm();
  if (theta < 1e-300) return identity();
  return from_axis_angle(v, theta);
}

Rotation Rotation::operator*(const Rotation& o) const {
  return Rotation(w_ * o.w_ - x_ * o.x_ - y_ * o.y_ - z_ * o.z_,
                  w_ * o.x_ + x_ * o.w_ + y_ * o.z_ - z_ * o.y_,
                  w_ * o.y_ - x_ * o.z_ + y_ * o.w_ + z_ * o.x_,
                  w_ * o.z_ + x_ * o.y_ - y_ * o.x_ + z_ * o.w_);
}

Vec3 Rotation::apply(const Vec3& v) const {
  // v + 2w(u x v) + 2u x (u x v)
  const Vec3 u{x_, y_, z_};
  const Vec3 t = u.cross(v) * 2.0;
  return v + t * w_ + u.cross(t);
}

double Rotation::angle() const {
  return 2.0 * std::acos(std::min(1.0, std::abs(w_)));
}

std::array<double, 9> Rotation::matrix() const {
  const double w = w_, x = x_, y = y_, z = z_;
  return {1 - 2 * (y * y + z * z), 2 * (x * y - w * z),     2 * (x * z + w * y),
          2 * (x * y + w * z),     1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
          2 * (x * z - w * y),     2 * (y * z + w * x),     1 - 2 * (x * x + y * y)};
}

bool Rotation::approx_equal(const Rotation& o, double tol) const {
  const double dp = std::abs(w_ - o.w_) + std::abs(x_ - o.x_) + std::abs(y_ - o.y_) + std::abs(z_ - o.z_);
  const double dm = std::abs(w_ + o.w_) + std::abs(x_ + o.x_) + std::abs(y_ + o.y_) + std::abs(z_ + o.z_);
  return std::min(dp, dm) <= tol;
}

double distance(const Rotation& a, const Rotation& b) {
  // Angle of a^-1 b from atan2 of its vector and scalar parts; acos of the
  // scalar part alone loses half the digits near zero.
  const double w = a.w() * b.w() + a.x() * b.x() + a.y() * b.y() + a.z() * b.z();
  const double x = (a.w() * b.x() - b.w() * a.x()) - (a.y() * b.z() - a.z() * b.y());
  const double y = (a.w() * b.y() - b.w() * a.y()) - (a.z() * b.x() - a.x() * b.z());
  const double z = (a.w() * b.z() - b.w() * a.z()) - (a.x() * b.y() - a.y() * b.x());
  return 2.0 * std::atan2(std::sqrt(x * x + y * y + z * z), std::abs(w));
}

double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

Rotation haar_rotation(CounterRng& rng) {
  for (;;) {
    const double w = rng.normal(), x = rng.normal(), y = rng.normal(), z = rng.normal();
    if (w * w + x * x + y * y + z * z > 1e-20) return Rotation(w, x, y, z);
  }
}

Vec3 uniform_sphere_point(CounterRng& rng) {
  for (;;) {
    const Vec3 v{rng.normal(), rng.normal(), rng.normal()};
    if (v.norm() > 1e-10) return v.normalized();
  }
}

std::vector<Rotation> haar_sample_so3(std::size_t n, std::uint64_t seed) {
  std::vector<Rotation> out(n);
#pragma omp parallel for schedule(static) if (n > 4096)
  for (std::size_t i = 0; i < n; ++i) {
    CounterRng rng(seed, streams::haar, i);
    out[i] = haar_rotation(rng);
  }
  return out;
}

}  // namespace haarconv
