#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "haarconv/error.hpp"
#include "haarconv/io.hpp"

using namespace haarconv;
using io::json;

TEST_CASE("dense measures round trip") {
  const DenseMeasure m("D4", {0.1, 0.2, 0.3, 0.4, 0, 0, 0, 0});
  const json j = io::to_json(m);
  CHECK(j["carrier"] == "D4");
  const DenseMeasure back = io::dense_from_json(j);
  CHECK(tv_distance(back, m) == 0);
  CHECK_FALSE(io::is_empirical(j));
  CHECK_THROWS_AS(io::dense_from_json(json{{"carrier", "D4"}, {"weights", {0.5, -0.5, 1.0}}}), ArgumentError);
  CHECK_THROWS_AS(io::dense_from_json(json{{"carrier", "D4"}}), ArgumentError);
}

TEST_CASE("empirical measures round trip") {
  const RotationEnsemble e(haar_sample_so3(20, 3), 3);
  const json j = io::to_json(e);
  CHECK(io::is_empirical(j));
  CHECK(j["carrier"] == "SO3");
  const auto back = io::rotations_from_json(j);
  REQUIRE(back.size() == 20);
  for (std::size_t i = 0; i < 20; ++i) CHECK(back.points()[i].approx_equal(e.points()[i], 1e-15));

  const SphereEnsemble s({{0, 0, 1}, {1, 0, 0}}, {0.25, 0.75}, 1);
  const auto sb = io::sphere_points_from_json(io::to_json(s));
  CHECK(sb.weights()[1] == doctest::Approx(0.75));
  CHECK(sb.points()[1].x == 1);
  CHECK_THROWS(io::rotations_from_json(io::to_json(s)));
}

TEST_CASE("groups and spaces") {
  const GroupPtr s3 = symmetric_group(3);
  const GroupPtr back = io::group_from_json(io::to_json(*s3));
  REQUIRE(back->order() == 6);
  for (Element a = 0; a < 6; ++a)
    for (Element b = 0; b < 6; ++b) CHECK(back->multiply(a, b) == s3->multiply(a, b));

  const json bad{{"name", "Bad"}, {"order", 2}, {"table", {{0, 1}, {0, 1}}}};
  CHECK_THROWS_AS(io::group_from_json(bad), StructureError);

  CHECK(io::resolve_group("Z12")->order() == 12);
  CHECK_THROWS_AS(io::resolve_group("Q8"), ArgumentError);

  const auto path = std::filesystem::temp_directory_path() / "haarconv_io_group.json";
  io::write_text_file(path.string(), io::dump(io::to_json(*s3)));
  CHECK(io::resolve_group(path.string())->order() == 6);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(io::read_json_file("/nonexistent/haarconv.json"), IoError);

  const auto d4 = io::parse_space("D4");
  CHECK(d4.group->order() == 8);
  CHECK_FALSE(d4.space);
  const auto x = io::parse_space("S3/{e,(12)}");
  REQUIRE(x.space);
  CHECK(x.space->size() == 3);
  CHECK(x.space->subgroup() == subgroups(x.group)[1]);
  CHECK(io::parse_space("S3/K1").space->subgroup().label() == x.space->subgroup().label());
  CHECK(io::parse_space("SO3").rotations);
  CHECK(io::parse_space("SO3/SO2").sphere);
  CHECK(io::parse_space("S2").sphere);
  CHECK_THROWS_AS(io::parse_space("S3/{(12),(123)}/x"), ArgumentError);
  CHECK_THROWS_AS(io::parse_space("S3/K99"), ArgumentError);
}

TEST_CASE("grids, lists and numbers") {
  const auto g = io::parse_grid("0:2:0.1");
  CHECK(g.size() == 21);
  CHECK(g[13] == doctest::Approx(1.3));
  CHECK_THROWS_AS(io::parse_grid("0:2"), ArgumentError);
  CHECK_THROWS_AS(io::parse_grid("0:2:-1"), ArgumentError);
  const auto parts = io::split_list("e,(12),(123)");
  CHECK(parts == std::vector<std::string>{"e", "(12)", "(123)"});
  CHECK(io::split_list("(1,2),3").size() == 2);
  CHECK(io::format_number(0.1) == "0.1");
  CHECK(io::format_number(1e-300) == "1e-300");
}

TEST_CASE("compound Poisson specs") {
  const json spec{{"group", "Z12"}, {"rate", 2.0}, {"jump", io::to_json(DenseMeasure::point_mass("Z12", 12, 1))}};
  const auto sg = io::cp_from_json(spec);
  CHECK(sg.rate() == 2.0);
  CHECK(sg.jump()[1] == 1.0);
  const auto again = io::cp_from_json(io::to_json(sg));
  CHECK(tv_distance(again.at(1), sg.at(1)) == 0);
  json wrong = spec;
  wrong["jump"] = io::to_json(DenseMeasure::uniform("D4", 8));
  CHECK_THROWS_AS(io::cp_from_json(wrong), DomainError);
}

TEST_CASE("csv writer") {
  io::CsvWriter w("seed=7", {"a", "b"});
  w.row({"1", "x,y"});
  CHECK(w.str() == "# seed=7\na,b\n1,\"x,y\"\n");
  CHECK_THROWS_AS(w.row({"1"}), ArgumentError);
}
