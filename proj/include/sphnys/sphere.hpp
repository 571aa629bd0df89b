#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace sphnys {

/// A point of the unit sphere S^2 in Cartesian coordinates.
///
/// Construction normalizes the input. Inputs already within 1e-14 of unit
/// length are kept bit-for-bit, so normalizing twice is a no-op (this keeps
/// text round-trips of point files exact).
class SpherePoint {
 public:
  SpherePoint() : c_{0.0, 0.0, 1.0} {}
  SpherePoint(double x, double y, double z);

  double x() const { return c_[0]; }
  double y() const { return c_[1]; }
  double z() const { return c_[2]; }
  const std::array<double, 3>& coords() const { return c_; }

  double dot(const SpherePoint& other) const {
    return c_[0] * other.c_[0] + c_[1] * other.c_[1] + c_[2] * other.c_[2];
  }

  SpherePoint antipode() const { return SpherePoint(-c_[0], -c_[1], -c_[2]); }

  friend bool operator==(const SpherePoint&, const SpherePoint&) = default;

 private:
  std::array<double, 3> c_;
};

/// Structure-of-arrays copy of a point list, the layout the SIMD kernels use.
struct PointColumns {
  std::vector<double> x, y, z;

  PointColumns() = default;
  explicit PointColumns(std::span<const SpherePoint> points);
  std::size_t size() const { return x.size(); }
};

/// Seeded set of sample points used for stage-2 evaluation and probing.
struct EvaluationGrid {
  std::vector<SpherePoint> points;
  std::uint64_t seed = 0;
};

/// Chordal distance sqrt(2(1 - x.y)).
double euclidean_distance(const SpherePoint& x, const SpherePoint& y);

/// Great-circle distance in [0, pi].
double geodesic_distance(const SpherePoint& x, const SpherePoint& y);

/// m independent uniform points (normalized 3-D Gaussian draws).
EvaluationGrid uniform_random_points(std::size_t m, std::uint64_t seed);

/// Largest distance from a probe point to its nearest configuration point.
/// Lower bound on the true mesh norm; converges as the probe is refined.
double mesh_norm(std::span<const SpherePoint> points, const EvaluationGrid& probe);

/// 3x3 rotation applied to a point (row-major matrix).
using Rotation = std::array<double, 9>;
SpherePoint rotate(const Rotation& r, const SpherePoint& p);
/// Random proper rotation from a seeded generator (QR of a Gaussian matrix).
Rotation random_rotation(std::uint64_t seed);

}  // namespace sphnys
