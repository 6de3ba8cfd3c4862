#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "haarconv/cli.hpp"
#include "haarconv/io.hpp"
#include "haarconv/measure_ops.hpp"

using namespace haarconv;
using io::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "haarconv");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("haarconv_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const json& j) const {
    const std::string p = (path / name).string();
    io::write_text_file(p, io::dump(j));
    return p;
  }
};

}  // namespace

TEST_CASE("convolve on a cyclic group") {
  TempDir dir;
  const auto a = dir.write("a.json", io::to_json(DenseMeasure::point_mass("Z12", 12, 5)));
  const auto b = dir.write("b.json", io::to_json(DenseMeasure::point_mass("Z12", 12, 9)));
  const auto r = run({"convolve", "--space", "Z12", "--lhs", a, "--rhs", b});
  REQUIRE(r.code == 0);
  const auto m = io::dense_from_json(json::parse(r.out));
  CHECK(m[2] == 1.0);
  CHECK(json::parse(r.out)["seed"] == 7);

  const auto out = (dir.path / "c.json").string();
  CHECK(run({"convolve", "--space", "Z12", "--lhs", a, "--rhs", b, "--out", out}).code == 0);
  CHECK(io::dense_from_json(io::read_json_file(out))[2] == 1.0);
}

TEST_CASE("convolve on a coset space and on SO3") {
  TempDir dir;
  const GroupPtr s3 = symmetric_group(3);
  const CosetSpace x(subgroups(s3)[1]);
  const auto a = dir.write("a.json", io::to_json(DenseMeasure::uniform(x.name(), 3)));
  const auto r = run({"convolve", "--space", "S3/{e,(12)}", "--lhs", a, "--rhs", a});
  REQUIRE(r.code == 0);
  CHECK(tv_distance(io::dense_from_json(json::parse(r.out)), DenseMeasure::uniform(x.name(), 3)) < 1e-15);

  const auto h = dir.write("h.json", io::to_json(RotationEnsemble(haar_sample_so3(200, 1), 1)));
  const auto r1 = run({"convolve", "--space", "SO3", "--lhs", h, "--rhs", h, "--particles", "300", "--seed", "4"});
  const auto r2 = run({"convolve", "--space", "SO3", "--lhs", h, "--rhs", h, "--particles", "300", "--seed", "4"});
  REQUIRE(r1.code == 0);
  CHECK(r1.out == r2.out);
  CHECK(io::rotations_from_json(json::parse(r1.out)).size() == 300);
}

TEST_CASE("semigroup, embed and root commands") {
  TempDir dir;
  const GroupPtr d4 = dihedral_d4();
  std::vector<double> w(8);
  for (std::size_t i = 0; i < 8; ++i) w[i] = 1.0 + double(i);
  const auto jump = dir.write("jump.json", io::to_json(DenseMeasure::normalized("D4", w)));
  const auto r = run({"semigroup", "--kind", "cp", "--group", "D4", "--rate", "1.0", "--jump", jump, "--times",
                      "0:2:0.1", "--check", "semigroup,decompose"});
  CHECK(r.code == 0);
  CHECK(r.out.find("t,s,deviation,test,pass") != std::string::npos);
  CHECK(r.out.find("false") == std::string::npos);

  const GroupPtr s3 = symmetric_group(3);
  const auto x = std::make_shared<const CosetSpace>(subgroups(s3)[1]);
  const auto cj = average(x->subgroup(), DenseMeasure::normalized("S3", {1, 2, 3, 4, 5, 6}), Invariance::conjugate);
  const CompoundPoissonSemigroup sg(FiniteCarrier(s3), 1.0, cj);
  const auto hint = dir.write("hint.json", io::to_json(sg));
  const auto target = dir.write(
      "alpha.json", io::to_json(project(*x, CompoundPoissonSemigroup(FiniteCarrier(s3), 1.0, cj, haar(x->subgroup())).at(1))));
  const auto e = run({"embed", "--space", "S3/K1", "--target", target, "--hint", hint});
  CHECK(e.code == 0);
  CHECK(json::parse(e.out)["pass"] == true);

  const auto mu = dir.write("mu.json", io::to_json(DenseMeasure("Z4", {0.25, 0.5, 0.25, 0})));
  const auto root = run({"root", "--group", "Z4", "--measure", mu, "--n", "2"});
  CHECK(root.code == 0);
  CHECK(json::parse(root.out)["found"] == true);
  const auto none = dir.write("none.json", io::to_json(DenseMeasure("Z2", {0.3, 0.7})));
  CHECK(run({"root", "--group", "Z2", "--measure", none, "--n", "2"}).code == 1);
}

TEST_CASE("verify command and exit codes") {
  const auto ok = run({"verify", "--suite", "decompose"});
  CHECK(ok.code == 0);
  CHECK(ok.out.rfind("# haarconv verify seed=7", 0) == 0);
  CHECK(run({"verify", "--suite", "decompose"}).out == ok.out);
  CHECK(run({"verify", "--suite", "decompose", "--inject-fault"}).code == 1);
  CHECK(run({"verify", "--suite", "nope"}).code == 2);
  CHECK(run({"verify"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"convolve", "--space", "Z12", "--lhs", "/nonexistent/a.json", "--rhs", "/nonexistent/b.json"}).code == 3);
  CHECK(run({"semigroup", "--kind", "nope"}).code == 2);

  ::setenv("HAARCONV_SEED", "11", 1);
  CHECK(run({"verify", "--suite", "decompose"}).out.rfind("# haarconv verify seed=11", 0) == 0);
  CHECK(run({"verify", "--suite", "decompose", "--seed", "3"}).out.rfind("# haarconv verify seed=3", 0) == 0);
  ::setenv("HAARCONV_SEED", "x", 1);
  CHECK(run({"verify", "--suite", "decompose"}).code == 2);
  ::unsetenv("HAARCONV_SEED");
}

TEST_CASE("installed binary") {
  const std::string bin = HAARCONV_BINARY;
  CHECK(std::system((bin + " verify --suite associativity > /dev/null 2>&1").c_str()) == 0);
  const int code = std::system((bin + " verify --suite nope > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(code) == 2);
}
