#include <doctest.h>

#include <fstream>
#include <sstream>

#include "sphnys/cli.hpp"
#include "sphnys/error.hpp"
#include "unit/test_helpers.hpp"

using namespace sphnys;
using namespace sphnys::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "sphnys_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config file parsing") {
  const fs::path p = scratch("run.cfg");
  std::ofstream(p) << "# sweep of experiment 1\nsubcommand = experiment\nexperiment = 1\n\nn = 12  \ngrid=300\n"
                      "seed = 7\npoints = equal_area:auto\ntiming = off\n";
  RunConfig c;
  apply_config_file(p, c);
  CHECK(c.subcommand == "experiment");
  CHECK(c.experiment == 1);
  CHECK(c.n == 12);
  CHECK(c.grid == 300);
  CHECK(c.seed == 7);
  CHECK_FALSE(c.timing);

  std::ofstream(p) << "colour = blue\n";
  CHECK_THROWS_AS(apply_config_file(p, c), ValidationError);
  std::ofstream(p) << "n 12\n";
  CHECK_THROWS_AS(apply_config_file(p, c), ValidationError);
  CHECK_THROWS_AS(apply_setting("n", "twelve", c), ValidationError);
  CHECK_THROWS_AS(apply_setting("grid", "0", c), ValidationError);
}

TEST_CASE("RunConfig JSON round trip") {
  RunConfig c;
  c.subcommand = "solve";
  c.points = "random:500:3";
  c.kernel = "mixed:-0.5:-0.25";
  c.K = "cos:10";
  c.f = "const:0.125";
  c.n = 9;
  c.grid = 123;
  c.seed = 18446744073709551557ull;
  c.sweep = "n=4:2:8";
  c.out = "x.csv";
  c.timing = false;
  const nlohmann::json j = c;
  const RunConfig back = nlohmann::json::parse(j.dump()).get<RunConfig>();
  CHECK(back == c);
}

TEST_CASE("descriptor parsing") {
  CHECK(parse_kernel("one").family() == SingularKernel::Family::one);
  CHECK(parse_kernel("algebraic:-0.5").nu1() == -0.5);
  CHECK(parse_kernel("log").family() == SingularKernel::Family::log);
  CHECK(parse_kernel("mixed:-0.5:-0.25").nu2() == -0.25);
  CHECK_THROWS_AS(parse_kernel("algebraic:-1"), ValidationError);
  CHECK_THROWS_AS(parse_kernel("gauss"), ValidationError);
  CHECK(parse_continuous_kernel("sin:10").kind() == ContinuousKernel::Kind::sin_scaled);
  CHECK(parse_continuous_kernel("const:2").parameter() == 2.0);
  CHECK_THROWS_AS(parse_continuous_kernel("tan:1"), ValidationError);
  CHECK(parse_sweep("n=10:5:35") == std::vector<int>{10, 15, 20, 25, 30, 35});
  CHECK(parse_sweep("n=3:1:3") == std::vector<int>{3});
  CHECK_THROWS_AS(parse_sweep("m=1:1:3"), ValidationError);
  CHECK_THROWS_AS(parse_sweep("n=5:0:9"), ValidationError);
}

TEST_CASE("point descriptors") {
  CHECK(resolve_points("equal_area:50", "equal", -1).size() == 50);
  CHECK(resolve_points("equal_area:auto", "equal", 4).size() == 25);
  CHECK(resolve_points("random:30:2", "equal", -1).points == random_rule(30, 2).points);
  const QuadratureRule d = resolve_points("tdesign:" + (sphnys::testing::data_dir() / "pointsets").string(), "equal", 10);
  CHECK(d.size() == 121);
  CHECK(resolve_points(sphnys::testing::pointset("sd_t10_m121.txt").string(), "equal", -1).size() == 121);
  CHECK_THROWS_AS(resolve_points("file:/no/such/file.txt", "equal", -1), ValidationError);
  CHECK_THROWS_AS(resolve_points("equal_area:auto", "equal", -1), ValidationError);
  CHECK_THROWS_AS(resolve_points("equal_area:10", "weird", -1), ValidationError);
}

TEST_CASE("validation happens before any work") {
  RunConfig c;
  c.n = -1;
  CHECK_THROWS_AS(validate(c), ValidationError);
  c = RunConfig{};
  c.subcommand = "plot";
  CHECK_THROWS_AS(validate(c), ValidationError);
  c = RunConfig{};
  c.subcommand = "experiment";
  c.experiment = 5;
  CHECK_THROWS_AS(validate(c), ValidationError);
  c = RunConfig{};
  c.points = "file:/missing.txt";
  CHECK_THROWS_AS(validate(c), ValidationError);
  c = RunConfig{};
  c.K = "sin:10";
  c.kernel = "log";
  CHECK_THROWS_AS(validate(c), ValidationError);  // const:auto needs constant K
  c.f = "const:oracle";
  CHECK_NOTHROW(validate(c));
  c = RunConfig{};
  c.out = scratch("bad.csv").string();
  c.kernel = "algebraic:-3";
  CHECK(execute(c) == kValidationError);
  CHECK_FALSE(fs::exists(c.out));
}

TEST_CASE("experiment setups") {
  CHECK(experiment_setup(1).f == 1.455449001125579);
  CHECK(experiment_setup(2).f == 0.303738699125466);
  CHECK(experiment_setup(3).f == doctest::Approx(1 - std::numbers::pi * (4 * std::log(2.0) - 2)).epsilon(1e-15));
  const ExperimentSetup e4 = experiment_setup(4);
  CHECK(e4.h.family() == SingularKernel::Family::mixed);
  CHECK(e4.h.nu1() == -0.5);
  CHECK(e4.h.nu2() == -0.5);
  CHECK(e4.K.kind() == ContinuousKernel::Kind::sin_scaled);
  CHECK(e4.K.parameter() == 10.0);
  CHECK(std::isfinite(e4.f));
  CHECK(constant_rhs_for_unit_solution(SingularKernel::one(), ContinuousKernel::sin_scaled(10)) ==
        doctest::Approx(1.455449001125579).epsilon(1e-14));
  // 30-digit reference value; the published constant 0.303738699125466 is 3.4e-8 away
  const double exp2 = constant_rhs_for_unit_solution(SingularKernel::algebraic(-0.5), ContinuousKernel::cos_scaled(10));
  CHECK(exp2 == doctest::Approx(0.30373873280033916).epsilon(1e-13));
  CHECK(std::abs(exp2 - 0.303738699125466) < 1e-7);
  CHECK_THROWS_AS(experiment_setup(0), ValidationError);
}

TEST_CASE("experiment 3 run") {
  RunOptions opts;
  opts.timing = false;
  const ResultRecord r = run_experiment(3, 5, "tdesign:" + (sphnys::testing::data_dir() / "pointsets").string(), opts, 10);
  CHECK(r.m == 121);
  CHECK(r.uniform_error <= 1e-10);
  CHECK(r.seconds == 0.0);
  CHECK(r.eta <= 1e-10);
}

TEST_CASE("results CSV") {
  CHECK(results_csv({}) == "experiment,n,m,eta,uniform_error,residual,seconds\n");
  ResultRecord r;
  r.experiment = 2;
  r.n = 3;
  r.m = 16;
  r.eta = 0.1;
  r.uniform_error = 1.0 / 3.0;
  const std::string csv = results_csv({r});
  CHECK(csv.find("2,3,16,0.10000000000000001,0.33333333333333331,0,0\n") != std::string::npos);
}

TEST_CASE("identical runs write identical files") {
  RunConfig c;
  c.subcommand = "experiment";
  c.experiment = 2;
  c.points = "equal_area:auto";
  c.n = 4;
  c.grid = 200;
  c.timing = false;
  c.out = scratch("a.csv").string();
  REQUIRE(execute(c) == kSuccess);
  const std::string first = slurp(c.out);
  const std::string first_json = slurp(scratch("a.json"));
  c.out = scratch("b.csv").string();
  REQUIRE(execute(c) == kSuccess);
  CHECK(slurp(c.out) == first);
  CHECK(first.rfind("experiment,n,m,eta,uniform_error,residual,seconds\n", 0) == 0);

  const nlohmann::json j = nlohmann::json::parse(first_json);
  RunConfig echoed = j.at("config").get<RunConfig>();
  echoed.out = scratch("a.csv").string();
  c.out = echoed.out;
  CHECK(echoed == c);
  CHECK(j.at("results").size() == 1);
}
