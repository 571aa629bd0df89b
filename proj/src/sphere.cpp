#include "sphnys/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sphnys/error.hpp"
#include "sphnys/simd/kernels.hpp"

namespace sphnys {

SpherePoint::SpherePoint(double x, double y, double z) : c_{x, y, z} {
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (!std::isfinite(norm) || norm == 0.0) {
    throw ValidationError("sphere point needs a finite, non-zero direction");
  }
  if (std::abs(norm - 1.0) > 1e-14) {
    for (double& v : c_) v /= norm;
  }
}

PointColumns::PointColumns(std::span<const SpherePoint> points) {
  x.reserve(points.size());
  y.reserve(points.size());
  z.reserve(points.size());
  for (const SpherePoint& p : points) {
    x.push_back(p.x());
    y.push_back(p.y());
    z.push_back(p.z());
  }
}

double euclidean_distance(const SpherePoint& x, const SpherePoint& y) {
  const double dx = x.x() - y.x(), dy = x.y() - y.y(), dz = x.z() - y.z();
  return std::min(2.0, std::sqrt(dx * dx + dy * dy + dz * dz));
}

double geodesic_distance(const SpherePoint& x, const SpherePoint& y) {
  return 2.0 * std::asin(0.5 * euclidean_distance(x, y));
}

EvaluationGrid uniform_random_points(std::size_t m, std::uint64_t seed) {
  if (m == 0) throw ValidationError("uniform_random_points: m must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  EvaluationGrid grid;
  grid.seed = seed;
  grid.points.reserve(m);
  while (grid.points.size() < m) {
    const double a = normal(rng), b = normal(rng), c = normal(rng);
    if (a * a + b * b + c * c < 1e-300) continue;
    grid.points.emplace_back(a, b, c);
  }
  return grid;
}

double mesh_norm(std::span<const SpherePoint> points, const EvaluationGrid& probe) {
  if (points.empty()) throw ValidationError("mesh_norm: empty point set");
  if (probe.points.empty()) throw ValidationError("mesh_norm: empty probe grid");
  const PointColumns cols(points);
  const auto& k = simd::kernels();
  double worst = 0.0;
  for (const SpherePoint& p : probe.points) {
    const double best = k.max_dot(cols.x, cols.y, cols.z, p.coords().data());
    worst = std::max(worst, std::acos(std::clamp(best, -1.0, 1.0)));
  }
  return worst;
}

SpherePoint rotate(const Rotation& r, const SpherePoint& p) {
  return SpherePoint(r[0] * p.x() + r[1] * p.y() + r[2] * p.z(),
                     r[3] * p.x() + r[4] * p.y() + r[5] * p.z(),
                     r[6] * p.x() + r[7] * p.y() + r[8] * p.z());
}

Rotation random_rotation(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  // Gram-Schmidt on Gaussian columns gives a Haar-distributed orthogonal matrix.
  std::array<std::array<double, 3>, 3> q{};
  for (auto& col : q) {
    for (double& v : col) v = normal(rng);
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < i; ++j) {
      double d = 0.0;
      for (int k = 0; k < 3; ++k) d += q[i][k] * q[j][k];
      for (int k = 0; k < 3; ++k) q[i][k] -= d * q[j][k];
    }
    double nrm = 0.0;
    for (int k = 0; k < 3; ++k) nrm += q[i][k] * q[i][k];
    nrm = std::sqrt(nrm);
    for (int k = 0; k < 3; ++k) q[i][k] /= nrm;
  }
  // force det = +1
  const double det = q[0][0] * (q[1][1] * q[2][2] - q[1][2] * q[2][1]) -
                     q[0][1] * (q[1][0] * q[2][2] - q[1][2] * q[2][0]) +
                     q[0][2] * (q[1][0] * q[2][1] - q[1][1] * q[2][0]);
  if (det < 0) {
    for (double& v : q[2]) v = -v;
  }
  Rotation r{};
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) r[3 * i + k] = q[i][k];
  }
  return r;
}

}  // namespace sphnys
