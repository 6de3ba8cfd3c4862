#include <doctest.h>

#include <set>

#include "haarconv/error.hpp"
#include "haarconv/group.hpp"
#include "haarconv/measure.hpp"
#include "haarconv/measure_ops.hpp"
#include "oracles.hpp"

using namespace haarconv;

namespace {

Element el(const GroupPtr& g, const char* label) {
  const auto e = g->find(label);
  REQUIRE(e.has_value());
  return *e;
}

void check_symmetric_table(int n) {
  const GroupPtr g = symmetric_group(n);
  std::vector<oracle::Perm> perms;
  for (Element i = 0; i < g->order(); ++i) perms.push_back(oracle::from_cycles(g->label(i), n));
  REQUIRE(std::set<oracle::Perm>(perms.begin(), perms.end()).size() == g->order());
  for (Element a = 0; a < g->order(); ++a)
    for (Element b = 0; b < g->order(); ++b)
      CHECK(perms[g->multiply(a, b)] == oracle::compose(perms[a], perms[b]));
}

}  // namespace

TEST_CASE("identity and modular arithmetic") {
  const GroupPtr z4 = cyclic_group(4);
  CHECK(z4->multiply(1, 3) == 0);
  CHECK(z4->inverse(1) == 3);
  CHECK(z4->inverse(0) == 0);
  for (Element g = 0; g < 4; ++g) {
    CHECK(z4->multiply(z4->identity(), g) == g);
    CHECK(z4->multiply(g, z4->identity()) == g);
    CHECK(z4->conjugate(g, 3) == 3);
  }
  CHECK(z4->is_abelian());
}

TEST_CASE("symmetric group tables agree with permutation composition") {
  check_symmetric_table(3);
  check_symmetric_table(4);
  const GroupPtr s3 = symmetric_group(3);
  CHECK(s3->label(s3->identity()) == "e");
  // (12)(123): 1 -> 2 -> 1, 2 -> 3, 3 -> 1 -> 2, i.e. (23)
  CHECK(s3->multiply(el(s3, "(12)"), el(s3, "(123)")) == el(s3, "(23)"));
  CHECK_FALSE(s3->is_abelian());
}

TEST_CASE("conjugation") {
  const GroupPtr s3 = symmetric_group(3);
  CHECK(s3->conjugate(el(s3, "(12)"), el(s3, "(123)")) == el(s3, "(132)"));
  for (Element x = 0; x < 6; ++x) CHECK(s3->conjugate(s3->identity(), x) == x);
}

TEST_CASE("D4 matches symmetries of the square") {
  const GroupPtr d4 = dihedral_d4();
  // s^a r^i acting on vertices 0..3: r(v) = v+1, s(v) = -v.
  auto perm = [](Element g) {
    const int a = int(g) / 4, i = int(g) % 4;
    oracle::Perm p(4);
    for (int v = 0; v < 4; ++v) {
      int w = (v + i) % 4;
      if (a) w = (4 - w) % 4;
      p[std::size_t(v)] = w;
    }
    return p;
  };
  for (Element a = 0; a < 8; ++a)
    for (Element b = 0; b < 8; ++b) CHECK(perm(d4->multiply(a, b)) == oracle::compose(perm(a), perm(b)));
  CHECK(d4->label(2) == "r2");
  CHECK(d4->label(4) == "s");
}

TEST_CASE("table validation") {
  CHECK_THROWS_AS(FiniteGroup("bad", {{0, 1}, {0, 1}}), StructureError);
  // A loop of order 5 with every element self-inverse cannot be associative.
  const std::vector<std::vector<Element>> loop{
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(FiniteGroup("loop", loop), StructureError);
  CHECK_THROWS_AS(cyclic_group(65), UnsupportedError);
  CHECK_THROWS_AS(builtin_group("Q8"), ArgumentError);
}

TEST_CASE("subgroup enumeration") {
  auto orders = [](const GroupPtr& g) {
    std::vector<std::size_t> o;
    for (const auto& h : subgroups(g)) o.push_back(h.order());
    return o;
  };
  const GroupPtr z4 = cyclic_group(4);
  const auto zs = subgroups(z4);
  REQUIRE(zs.size() == 3);
  CHECK(std::vector<Element>(zs[1].members().begin(), zs[1].members().end()) == std::vector<Element>{0, 2});
  CHECK(orders(symmetric_group(3)) == std::vector<std::size_t>{1, 2, 2, 2, 3, 6});
  CHECK(subgroups(cyclic_group(1)).size() == 1);
  CHECK(subgroups(cyclic_group(12)).size() == 6);
  CHECK(subgroups(dihedral_d4()).size() == 10);
  CHECK(subgroups(symmetric_group(4)).size() == 30);
  CHECK(subgroups(symmetric_group(3))[1].label() == "{e,(12)}");
  CHECK(subgroups(dihedral_d4())[1].label() == "{e,r2}");
  CHECK(subgroups(dihedral_d4())[2].label() == "{e,s}");
}

TEST_CASE("subgroup validation and generation") {
  const GroupPtr s3 = symmetric_group(3);
  CHECK_THROWS_AS(Subgroup(s3, {0, 1, 2}), StructureError);
  CHECK(generated_subgroup(s3, std::vector<Element>{el(s3, "(123)")}).order() == 3);
  CHECK(generated_subgroup(s3, std::vector<Element>{el(s3, "(12)"), el(s3, "(13)")}).order() == 6);
}

TEST_CASE("haar measure of subgroups") {
  const GroupPtr s3 = symmetric_group(3);
  const DenseMeasure k = haar(subgroups(s3)[1]);
  CHECK(k[0] == doctest::Approx(0.5));
  CHECK(k[el(s3, "(12)")] == doctest::Approx(0.5));
  CHECK(tv_distance(haar(trivial_subgroup(s3)), delta_identity(*s3)) == 0);
  const DenseMeasure u = haar(whole_group(cyclic_group(4)));
  for (std::size_t i = 0; i < 4; ++i) CHECK(u[i] == doctest::Approx(0.25));
  for (const GroupPtr& g : {s3, dihedral_d4(), symmetric_group(4)})
    for (const auto& h : subgroups(g)) CHECK(tv_distance(convolve(*g, haar(h), haar(h)), haar(h)) <= 1e-15);
}

TEST_CASE("associativity of every built-in table") {
  for (const GroupPtr& g : {symmetric_group(4), dihedral_d4(), cyclic_group(12)})
    for (Element a = 0; a < g->order(); ++a)
      for (Element b = 0; b < g->order(); ++b)
        for (Element c = 0; c < g->order(); ++c)
          REQUIRE(g->multiply(g->multiply(a, b), c) == g->multiply(a, g->multiply(b, c)));
}

TEST_CASE("opaque group elements") {
  const GroupPtr z4 = cyclic_group(4);
  const GroupPtr s3 = symmetric_group(3);
  const GroupElement a(z4, 1), b(z4, 3);
  CHECK(multiply(a, b) == identity_of(z4));
  CHECK(inverse(a) == b);
  CHECK_THROWS_AS(multiply(a, GroupElement(s3, 1)), DomainError);
  CHECK_THROWS_AS(multiply(a, GroupElement(Rotation::about_z(1.0))), DomainError);
  const GroupElement r(Rotation::about_z(0.3));
  CHECK(multiply(r, inverse(r)).rotation().approx_equal(Rotation::identity(), 1e-12));
  CHECK(conjugate(GroupElement(s3, *s3->find("(12)")), GroupElement(s3, *s3->find("(123)"))) ==
        GroupElement(s3, *s3->find("(132)")));
}
