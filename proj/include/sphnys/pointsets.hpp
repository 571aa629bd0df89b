#pragma once

#include <cstdint>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include "sphnys/sphere.hpp"

namespace sphnys {

/// Positive-weight quadrature rule on S^2.
///
/// Invariants (checked by validate()): as many weights as points, every
/// weight finite and > 0, and sum of weights <= weight_bound.
struct QuadratureRule {
  std::vector<SpherePoint> points;
  std::vector<double> weights;
  std::string label;

  static constexpr double kDefaultWeightBound = 8.0 * std::numbers::pi;

  std::size_t size() const { return points.size(); }
  double weight_sum() const;
  void validate(double weight_bound = kDefaultWeightBound) const;
};

/// Equal-weight rule 4 pi / m on the given points.
QuadratureRule equal_weight_rule(std::vector<SpherePoint> points, std::string label);

enum class WeightMode { equal, from_file };

/// Reads `x y z [w]` rows; `#` starts a comment. Rows whose norm is off by more
/// than 1e-6 are rejected, the others are normalized.
QuadratureRule load_pointset(const std::filesystem::path& path, WeightMode mode);

/// Writes `x y z w` rows with 17 significant digits.
void write_pointset(const std::filesystem::path& path, const QuadratureRule& rule);

/// Recursive zonal equal-area partition into m regions (polar caps plus
/// collars); one point at the center of each region, weights 4 pi / m.
QuadratureRule equal_area_points(std::size_t m);

/// Ring structure of the equal-area partition, exposed for testing: the
/// colatitudes bounding each zone (caps included) and the region count of each.
struct EqualAreaZones {
  std::vector<double> boundaries;  // size = counts.size() + 1, from 0 to pi
  std::vector<std::size_t> counts;
};
EqualAreaZones equal_area_zones(std::size_t m);

/// m uniform random points with weights 4 pi / m.
QuadratureRule random_rule(std::size_t m, std::uint64_t seed);

}  // namespace sphnys
