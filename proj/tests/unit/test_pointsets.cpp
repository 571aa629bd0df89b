#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>

#include "sphnys/error.hpp"
#include "sphnys/mz_analysis.hpp"
#include "sphnys/pointsets.hpp"
#include "unit/test_helpers.hpp"

using namespace sphnys;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

fs::path scratch_file(const std::string& name, const std::string& content) {
  const fs::path dir = fs::temp_directory_path() / "sphnys_pointsets_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("octahedron file with equal weights") {
  const fs::path p = scratch_file("oct.txt",
                                  "# octahedron\n1 0 0\n-1 0 0\n0 1 0\n\n0 -1 0  # comment\n0 0 1\n0 0 -1\n");
  const QuadratureRule rule = load_pointset(p, WeightMode::equal);
  REQUIRE(rule.size() == 6);
  for (double w : rule.weights) CHECK(w == Approx(4 * kPi / 6).epsilon(1e-15));
  CHECK(rule.weights[0] == Approx(2.0943951).epsilon(1e-8));
}

TEST_CASE("weights from a fourth column are loaded verbatim") {
  const double w = 4 * kPi / 6;
  std::string content;
  for (const char* row : {"1 0 0", "-1 0 0", "0 1 0", "0 -1 0", "0 0 1", "0 0 -1"}) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " %.17g\n", w);
    content += std::string(row) + buf;
  }
  const QuadratureRule rule = load_pointset(scratch_file("octw.txt", content), WeightMode::from_file);
  for (double v : rule.weights) CHECK(v == w);
  CHECK(rule.weight_sum() == Approx(4 * kPi).epsilon(1e-15));
}

TEST_CASE("malformed point files are rejected with line numbers") {
  auto message = [](const fs::path& p, WeightMode mode) {
    try {
      load_pointset(p, mode);
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  const std::string bad_number = message(scratch_file("bad1.txt", "1 0 0\n0 x 1\n"), WeightMode::equal);
  CHECK(bad_number.find(":2:") != std::string::npos);
  const std::string bad_cols = message(scratch_file("bad2.txt", "1 0 0\n\n0 1\n"), WeightMode::equal);
  CHECK(bad_cols.find(":3:") != std::string::npos);
  const std::string off_sphere = message(scratch_file("bad3.txt", "1.001 0 0\n"), WeightMode::equal);
  CHECK(off_sphere.find("unit sphere") != std::string::npos);
  const std::string bad_weight = message(scratch_file("bad4.txt", "1 0 0 1.0\n0 1 0 -2\n"), WeightMode::from_file);
  CHECK(bad_weight.find(":2:") != std::string::npos);
  const std::string missing = message(scratch_file("bad5.txt", "1 0 0 1.0\n0 1 0\n"), WeightMode::from_file);
  CHECK(missing.find("missing weight") != std::string::npos);
  CHECK_THROWS_AS(load_pointset(scratch_file("empty.txt", "# nothing\n"), WeightMode::equal), ValidationError);
  CHECK_THROWS_AS(load_pointset("/nonexistent/points.txt", WeightMode::equal), ValidationError);
}

TEST_CASE("rule invariants are enforced") {
  QuadratureRule r = equal_weight_rule({SpherePoint(0, 0, 1)}, "one");
  CHECK_NOTHROW(r.validate());
  r.weights[0] = 0.0;
  CHECK_THROWS_AS(r.validate(), ValidationError);
  r.weights[0] = 9 * kPi;
  CHECK_THROWS_AS(r.validate(), ValidationError);
  CHECK_NOTHROW(r.validate(10 * kPi));
  r.weights.push_back(1.0);
  CHECK_THROWS_AS(r.validate(), ValidationError);
}

TEST_CASE("load, write, load round-trips bit for bit") {
  for (const auto& d : sphnys::testing::design_files()) {
    const QuadratureRule a = load_pointset(sphnys::testing::pointset(d.file), WeightMode::equal);
    const fs::path out = fs::temp_directory_path() / "sphnys_pointsets_test" / "roundtrip.txt";
    write_pointset(out, a);
    const QuadratureRule b = load_pointset(out, WeightMode::from_file);
    REQUIRE(a.size() == b.size());
    bool identical = true;
    for (std::size_t j = 0; j < a.size(); ++j) {
      identical = identical && a.points[j] == b.points[j] && a.weights[j] == b.weights[j];
    }
    CHECK(identical);
  }
  const QuadratureRule ea = equal_area_points(333);
  const fs::path out = fs::temp_directory_path() / "sphnys_pointsets_test" / "roundtrip_ea.txt";
  write_pointset(out, ea);
  const QuadratureRule b = load_pointset(out, WeightMode::from_file);
  write_pointset(out, b);
  const QuadratureRule c = load_pointset(out, WeightMode::from_file);
  bool identical = true;
  for (std::size_t j = 0; j < b.size(); ++j) identical = identical && b.points[j] == c.points[j];
  CHECK(identical);
}

TEST_CASE("equal-area generator: degenerate sizes") {
  const QuadratureRule one = equal_area_points(1);
  REQUIRE(one.size() == 1);
  CHECK(one.weights[0] == Approx(4 * kPi).epsilon(1e-15));

  const QuadratureRule two = equal_area_points(2);
  REQUIRE(two.size() == 2);
  CHECK(two.points[0].z() == Approx(1.0).epsilon(1e-15));
  CHECK(two.points[1].z() == Approx(-1.0).epsilon(1e-15));
  CHECK(two.weights[0] == Approx(2 * kPi).epsilon(1e-15));
  CHECK_THROWS_AS(equal_area_points(0), ValidationError);
}

TEST_CASE("equal-area zones have equal-area regions") {
  for (std::size_t m : {3u, 4u, 5u, 10u, 33u, 100u, 121u, 400u, 441u, 1681u, 5000u}) {
    const EqualAreaZones z = equal_area_zones(m);
    REQUIRE(z.boundaries.size() == z.counts.size() + 1);
    std::size_t total = 0;
    double area = 0.0;
    for (std::size_t i = 0; i < z.counts.size(); ++i) {
      total += z.counts[i];
      const double zone = 2 * kPi * (std::cos(z.boundaries[i]) - std::cos(z.boundaries[i + 1]));
      area += zone;
      REQUIRE(z.counts[i] > 0);
      CHECK(zone / static_cast<double>(z.counts[i]) == Approx(4 * kPi / m).epsilon(1e-10));
    }
    CHECK(total == m);
    CHECK(area == Approx(4 * kPi).epsilon(1e-10));
    const QuadratureRule rule = equal_area_points(m);
    CHECK(rule.size() == m);
    CHECK_NOTHROW(rule.validate());
  }
}

TEST_CASE("equal-area points cover the sphere") {
  const QuadratureRule rule = equal_area_points(400);
  const double h = mesh_norm(rule.points, uniform_random_points(40000, 8));
  CHECK(h <= 2 * std::sqrt(4 * kPi / 400));
}

TEST_CASE("random rules") {
  const QuadratureRule a = random_rule(50, 3), b = random_rule(50, 3), c = random_rule(50, 4);
  CHECK(a.points == b.points);
  CHECK(a.points != c.points);
  CHECK(a.weight_sum() == Approx(4 * kPi).epsilon(1e-14));
  CHECK(a.label == "random:50:3");
}

TEST_CASE("shipped t-design files are exact to degree t") {
  for (const auto& d : sphnys::testing::design_files()) {
    const QuadratureRule rule = load_pointset(sphnys::testing::pointset(d.file), WeightMode::equal);
    CHECK(rule.size() == static_cast<std::size_t>((d.t + 1) * (d.t + 1)));
    CHECK(quadrature_error_on_harmonics(rule, d.t) <= 1e-9);
  }
}
