#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "haarconv/group.hpp"
#include "haarconv/rotation.hpp"

namespace haarconv {

/// Index of a coset in a finite coset space.
using Coset = std::size_t;

/// X = G/K for a finite group G and subgroup K.
///
/// Cosets are numbered by their representative, which is the identity for
/// the origin eK and the smallest element index otherwise. The action table
/// g * x is precomputed.
class CosetSpace {
 public:
  explicit CosetSpace(Subgroup k);

  const FiniteGroup& group() const { return subgroup_.parent(); }
  const GroupPtr& group_ptr() const { return subgroup_.parent_ptr(); }
  const Subgroup& subgroup() const { return subgroup_; }
  /// "G/{...}"
  const std::string& name() const { return name_; }

  std::size_t size() const { return representatives_.size(); }
  Coset origin() const { return origin_; }

  Coset project(Element g) const { return coset_of_[g]; }
  Element representative(Coset x) const { return representatives_[x]; }
  std::span<const Element> members(Coset x) const { return members_[x]; }
  Coset act(Element g, Coset x) const { return action_[g * size() + x]; }
  /// Row-major |G| x |X| action table.
  std::span<const Coset> action_table() const { return action_; }

 private:
  Subgroup subgroup_;
  std::string name_;
  std::vector<Coset> coset_of_;
  std::vector<Element> representatives_;
  std::vector<std::vector<Element>> members_;
  std::vector<Coset> action_;
  Coset origin_ = 0;
};

using SpacePtr = std::shared_ptr<const CosetSpace>;

/// Section map S: X -> G with project(S(x)) = x, stored as a lookup table.
class FiniteSection {
 public:
  /// Canonical representatives; S(o) = e.
  explicit FiniteSection(const CosetSpace& space);
  /// Throws StructureError unless project(reps[x]) == x for all x.
  FiniteSection(const CosetSpace& space, std::vector<Element> reps);
  /// Uniformly random member of every coset, origin included.
  static FiniteSection randomized(const CosetSpace& space, std::uint64_t seed);

  Element operator()(Coset x) const { return reps_[x]; }
  std::span<const Element> table() const { return reps_; }

 private:
  std::vector<Element> reps_;
};

/// S^2 = SO(3)/SO(2), K = rotations about the z axis, origin the north pole.
namespace sphere {

inline constexpr Vec3 north_pole{0, 0, 1};
inline constexpr double kPointTolerance = 1e-9;

Vec3 project(const Rotation& g);
Vec3 action(const Rotation& g, const Vec3& x);
/// Shortest-arc rotation taking the north pole to x; at the south pole the
/// rotation by pi about the x axis.
Rotation geodesic_section(const Vec3& x);
bool same_point(const Vec3& a, const Vec3& b, double tol = kPointTolerance);

}  // namespace sphere

/// Section map on S^2. The randomized variant post-multiplies the geodesic
/// section by a z-rotation whose angle is a hash of (seed, x), so it stays a
/// deterministic function of the point.
class SphereSection {
 public:
  SphereSection() = default;
  static SphereSection randomized(std::uint64_t seed);

  Rotation operator()(const Vec3& x) const;
  bool is_randomized() const { return randomized_; }

 private:
  bool randomized_ = false;
  std::uint64_t seed_ = 0;
};

}  // namespace haarconv
