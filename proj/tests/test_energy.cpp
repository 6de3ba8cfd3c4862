#include <doctest.h>

#include "haarconv/energy.hpp"
#include "haarconv/error.hpp"

using namespace haarconv;

TEST_CASE("identical ensembles give statistic zero") {
  const RotationEnsemble a(haar_sample_so3(1000, 1), 1);
  const auto r = energy_distance_test(a, a);
  CHECK(r.statistic == 0);
  CHECK(r.pass);
  CHECK(r.points == 500);
}

TEST_CASE("disjoint point masses fail") {
  const RotationEnsemble a(std::vector<Rotation>(200, Rotation::identity()), 1);
  const RotationEnsemble b(std::vector<Rotation>(200, Rotation::about_z(1.5)), 2);
  const auto r = energy_distance_test(a, b);
  CHECK(r.statistic > 0.5);
  CHECK_FALSE(r.pass);
  CHECK(r.p_value < 0.01);

  const SphereEnsemble p(std::vector<Vec3>(150, Vec3{0, 0, 1}), 1), q(std::vector<Vec3>(150, Vec3{1, 0, 0}), 2);
  CHECK_FALSE(energy_distance_test(p, q).pass);
}

TEST_CASE("too few particles") {
  const RotationEnsemble a(haar_sample_so3(99, 1), 1), b(haar_sample_so3(200, 2), 2);
  CHECK_THROWS_AS(energy_distance_test(a, b), UnsupportedError);
}

TEST_CASE("shifted distributions are detected") {
  std::vector<Rotation> near, far;
  CounterRng rng(4, 0, 0);
  for (int i = 0; i < 2000; ++i) {
    near.push_back(Rotation::from_rotation_vector({0.3 * rng.normal(), 0.3 * rng.normal(), 0.3 * rng.normal()}));
    far.push_back(Rotation::about_z(0.5) *
                  Rotation::from_rotation_vector({0.3 * rng.normal(), 0.3 * rng.normal(), 0.3 * rng.normal()}));
  }
  CHECK_FALSE(energy_distance_test(RotationEnsemble(near, 1), RotationEnsemble(far, 2)).pass);
}

TEST_CASE("calibration: independent Haar samples pass at level 0.01") {
  int passes = 0;
  for (std::uint64_t rep = 0; rep < 100; ++rep) {
    const RotationEnsemble a(haar_sample_so3(10000, 2 * rep + 1), 2 * rep + 1);
    const RotationEnsemble b(haar_sample_so3(10000, 2 * rep + 2), 2 * rep + 2);
    EnergyTestOptions o;
    o.seed = rep;
    passes += energy_distance_test(a, b, o).pass;
  }
  CHECK(passes >= 95);
}

TEST_CASE("weighted ensembles are resampled by weight") {
  const std::vector<Rotation> two{Rotation::identity(), Rotation::about_z(2.0)};
  std::vector<Rotation> pts;
  std::vector<double> even, skew;
  for (int i = 0; i < 200; ++i) {
    pts.push_back(two[std::size_t(i / 100)]);
    even.push_back(1.0);
    skew.push_back(i < 100 ? 19.0 : 1.0);
  }
  std::vector<Rotation> many;
  for (int i = 0; i < 400; ++i) many.push_back(two[std::size_t(i % 2)]);
  CHECK(energy_distance_test(RotationEnsemble(pts, even, 1), RotationEnsemble(many, 2)).pass);
  CHECK_FALSE(energy_distance_test(RotationEnsemble(pts, skew, 3), RotationEnsemble(many, 2)).pass);
}
