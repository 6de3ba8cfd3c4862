#include "haarconv/homogeneous.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <numbers>

#include "haarconv/error.hpp"
#include "haarconv/random.hpp"

namespace haarconv {

CosetSpace::CosetSpace(Subgroup k) : subgroup_(std::move(k)) {
  const FiniteGroup& g = group();
  name_ = g.name() + "/" + subgroup_.label();
  const std::size_t n = g.order();
  constexpr Coset unset = ~Coset{0};
  coset_of_.assign(n, unset);

  // Visit elements in index order, with the identity first so that eK gets
  // the identity as representative.
  std::vector<Element> order;
  order.push_back(g.identity());
  for (Element x = 0; x < n; ++x)
    if (x != g.identity()) order.push_back(x);

  for (Element x : order) {
    if (coset_of_[x] != unset) continue;
    const Coset c = representatives_.size();
    representatives_.push_back(x);
    std::vector<Element> members;
    for (Element kk : subgroup_.members()) {
      const Element y = g.multiply(x, kk);
      coset_of_[y] = c;
      members.push_back(y);
    }
    std::sort(members.begin(), members.end());
    members_.push_back(std::move(members));
  }

  // Renumber cosets so that they are sorted by representative index.
  std::vector<Coset> perm(representatives_.size());
  std::iota(perm.begin(), perm.end(), Coset{0});
  std::sort(perm.begin(), perm.end(),
            [&](Coset a, Coset b) { return representatives_[a] < representatives_[b]; });
  std::vector<Coset> rank(perm.size());
  for (Coset i = 0; i < perm.size(); ++i) rank[perm[i]] = i;
  std::vector<Element> reps(perm.size());
  std::vector<std::vector<Element>> mems(perm.size());
  for (Coset i = 0; i < perm.size(); ++i) {
    reps[i] = representatives_[perm[i]];
    mems[i] = std::move(members_[perm[i]]);
  }
  representatives_ = std::move(reps);
  members_ = std::move(mems);
  for (auto& c : coset_of_) c = rank[c];
  origin_ = coset_of_[g.identity()];

  const std::size_t m = size();
  action_.resize(n * m);
  for (Element h = 0; h < n; ++h)
    for (Coset x = 0; x < m; ++x) action_[h * m + x] = coset_of_[g.multiply(h, representatives_[x])];
}

FiniteSection::FiniteSection(const CosetSpace& space)
    : reps_(space.size()) {
  for (Coset x = 0; x < space.size(); ++x) reps_[x] = space.representative(x);
}

FiniteSection::FiniteSection(const CosetSpace& space, std::vector<Element> reps)
    : reps_(std::move(reps)) {
  if (reps_.size() != space.size()) throw StructureError("section table has the wrong size");
  for (Coset x = 0; x < reps_.size(); ++x) {
    if (reps_[x] >= space.group().order() || space.project(reps_[x]) != x)
      throw StructureError("section does not satisfy project(S(x)) = x");
  }
}

FiniteSection FiniteSection::randomized(const CosetSpace& space, std::uint64_t seed) {
  std::vector<Element> reps(space.size());
  for (Coset x = 0; x < space.size(); ++x) {
    CounterRng rng(seed, streams::section, x);
    const auto members = space.members(x);
    reps[x] = members[static_cast<std::size_t>(rng.uniform() * members.size()) % members.size()];
  }
  return FiniteSection(space, std::move(reps));
}

namespace sphere {

Vec3 project(const Rotation& g) { return g.apply(north_pole).normalized(); }

Vec3 action(const Rotation& g, const Vec3& x) { return g.apply(x).normalized(); }

Rotation geodesic_section(const Vec3& p) {
  const Vec3 x = p.normalized();
  // Half-angle quaternion (1 + z.x, z cross x); 1 + x.z is evaluated without
  // cancellation in the southern hemisphere.
  const double lateral = x.x * x.x + x.y * x.y;
  const double one_plus_c = x.z >= 0 ? 1.0 + x.z : lateral / (1.0 - x.z);
  if (lateral == 0.0 && x.z < 0) return Rotation(0, 1, 0, 0);
  return Rotation(one_plus_c, -x.y, x.x, 0);
}

bool same_point(const Vec3& a, const Vec3& b, double tol) { return (a - b).norm() <= tol; }

}  // namespace sphere

SphereSection SphereSection::randomized(std::uint64_t seed) {
  SphereSection s;
  s.randomized_ = true;
  s.seed_ = seed;
  return s;
}

Rotation SphereSection::operator()(const Vec3& x) const {
  const Rotation base = sphere::geodesic_section(x);
  if (!randomized_) return base;
  std::uint64_t h = splitmix64(seed_ ^ streams::section);
  h = splitmix64(h ^ std::bit_cast<std::uint64_t>(x.x));
  h = splitmix64(h ^ std::bit_cast<std::uint64_t>(x.y));
  h = splitmix64(h ^ std::bit_cast<std::uint64_t>(x.z));
  const double phi = 2.0 * std::numbers::pi * static_cast<double>(h >> 11) * 0x1.0p-53;
  return base * Rotation::about_z(phi);
}

}  // namespace haarconv
