#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sphnys/error.hpp"
#include "sphnys/sphere.hpp"
#include "unit/test_helpers.hpp"

using namespace sphnys;
using doctest::Approx;

TEST_CASE("sphere points are normalized on construction") {
  const SpherePoint p(3, 0, 4);
  CHECK(p.x() == Approx(0.6).epsilon(1e-15));
  CHECK(p.z() == Approx(0.8).epsilon(1e-15));
  CHECK(std::abs(std::sqrt(p.dot(p)) - 1.0) <= 1e-12);
  CHECK_THROWS_AS(SpherePoint(0, 0, 0), ValidationError);
  CHECK_THROWS_AS(SpherePoint(NAN, 0, 1), ValidationError);
  // already unit: kept bit for bit
  const SpherePoint q(p.x(), p.y(), p.z());
  CHECK(q == p);
}

TEST_CASE("euclidean and geodesic distance examples") {
  const SpherePoint n(0, 0, 1), s(0, 0, -1), ex(1, 0, 0), ey(0, 1, 0);
  CHECK(euclidean_distance(n, n) == 0.0);
  CHECK(euclidean_distance(n, s) == Approx(2.0).epsilon(1e-15));
  CHECK(euclidean_distance(ex, ey) == Approx(std::numbers::sqrt2).epsilon(1e-15));
  CHECK(geodesic_distance(n, n) == 0.0);
  CHECK(geodesic_distance(n, s) == Approx(std::numbers::pi).epsilon(1e-15));
  CHECK(geodesic_distance(ex, ey) == Approx(std::numbers::pi / 2).epsilon(1e-15));
}

TEST_CASE("distance identities on random pairs") {
  const EvaluationGrid g = uniform_random_points(400, 11);
  for (std::size_t i = 0; i + 1 < g.points.size(); i += 2) {
    const SpherePoint& x = g.points[i];
    const SpherePoint& y = g.points[i + 1];
    const double e = euclidean_distance(x, y);
    CHECK(std::abs(e * e - 2.0 * (1.0 - x.dot(y))) <= 1e-12);
    CHECK(std::abs(e - 2.0 * std::sin(0.5 * geodesic_distance(x, y))) <= 1e-12);
  }
}

TEST_CASE("uniform random points are reproducible and uniform") {
  const EvaluationGrid a = uniform_random_points(1, 7);
  const EvaluationGrid b = uniform_random_points(1, 7);
  REQUIRE(a.points.size() == 1);
  CHECK(a.points[0] == b.points[0]);
  CHECK(a.seed == 7);
  CHECK_THROWS_AS(uniform_random_points(0, 1), ValidationError);

  const EvaluationGrid big = uniform_random_points(100000, 1);
  double mx = 0, my = 0, mz = 0, z2 = 0;
  for (const SpherePoint& p : big.points) {
    CHECK(std::abs(p.dot(p) - 1.0) <= 1e-12);
    mx += p.x();
    my += p.y();
    mz += p.z();
    z2 += p.z() * p.z();
  }
  const double m = static_cast<double>(big.points.size());
  CHECK(std::sqrt(mx * mx + my * my + mz * mz) / m <= 0.02);
  CHECK(z2 / m >= 0.32);
  CHECK(z2 / m <= 0.35);
}

TEST_CASE("mesh norm examples") {
  const std::vector<SpherePoint> north{{0, 0, 1}};
  EvaluationGrid probe{{SpherePoint(0, 0, -1), SpherePoint(1, 0, 0)}, 0};
  CHECK(mesh_norm(north, probe) == Approx(std::numbers::pi).epsilon(1e-15));

  // Farthest point from the octahedron vertices is a face centre, at angle
  // arccos(1/sqrt 3) from its three vertices.
  const auto oct = sphnys::testing::octahedron();
  const EvaluationGrid fine = uniform_random_points(200000, 3);
  const double h = mesh_norm(oct, fine);
  const double exact = std::acos(1.0 / std::sqrt(3.0));
  CHECK(h <= exact + 1e-12);
  CHECK(h >= exact - 0.01);

  EvaluationGrid self{oct, 0};
  CHECK(mesh_norm(oct, self) == 0.0);

  CHECK_THROWS_AS(mesh_norm(std::vector<SpherePoint>{}, probe), ValidationError);
}

TEST_CASE("mesh norm does not grow when points are added") {
  const EvaluationGrid probe = uniform_random_points(20000, 5);
  const EvaluationGrid pool = uniform_random_points(200, 6);
  std::vector<SpherePoint> pts;
  double prev = std::numbers::pi + 1.0;
  for (const SpherePoint& p : pool.points) {
    pts.push_back(p);
    const double h = mesh_norm(pts, probe);
    CHECK(h <= prev);
    prev = h;
  }
}

TEST_CASE("random rotations are orthogonal with determinant one") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Rotation r = random_rotation(seed);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double d = 0;
        for (int k = 0; k < 3; ++k) d += r[3 * i + k] * r[3 * j + k];
        CHECK(std::abs(d - (i == j ? 1.0 : 0.0)) <= 1e-14);
      }
    }
    const double det = r[0] * (r[4] * r[8] - r[5] * r[7]) - r[1] * (r[3] * r[8] - r[5] * r[6]) +
                       r[2] * (r[3] * r[7] - r[4] * r[6]);
    CHECK(det == Approx(1.0).epsilon(1e-13));
  }
}
