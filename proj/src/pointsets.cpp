#include "sphnys/pointsets.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "sphnys/error.hpp"

namespace sphnys {

double QuadratureRule::weight_sum() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

void QuadratureRule::validate(double weight_bound) const {
  if (points.empty()) throw ValidationError("quadrature rule '" + label + "' has no points");
  if (points.size() != weights.size()) {
    throw ValidationError("quadrature rule '" + label + "': point/weight count mismatch");
  }
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (!(weights[j] > 0.0) || !std::isfinite(weights[j])) {
      throw ValidationError("quadrature rule '" + label + "': weight " + std::to_string(j + 1) +
                            " is not positive");
    }
  }
  if (weight_sum() > weight_bound) {
    throw ValidationError("quadrature rule '" + label + "': weight sum exceeds bound");
  }
}

QuadratureRule equal_weight_rule(std::vector<SpherePoint> points, std::string label) {
  QuadratureRule rule;
  const double w = 4.0 * std::numbers::pi / static_cast<double>(points.size());
  rule.weights.assign(points.size(), w);
  rule.points = std::move(points);
  rule.label = std::move(label);
  return rule;
}

namespace {

bool parse_double(std::string_view token, double& out) {
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

QuadratureRule load_pointset(const std::filesystem::path& path, WeightMode mode) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open point file " + path.string());
  std::vector<SpherePoint> points;
  std::vector<double> weights;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<double> values;
    std::string token;
    while (fields >> token) {
      double v;
      if (!parse_double(token, v) || !std::isfinite(v)) {
        throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                              ": cannot parse number '" + token + "'");
      }
      values.push_back(v);
    }
    if (values.empty()) continue;
    if (values.size() != 3 && values.size() != 4) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": expected 3 or 4 columns, got " + std::to_string(values.size()));
    }
    const double norm = std::sqrt(values[0] * values[0] + values[1] * values[1] + values[2] * values[2]);
    if (std::abs(norm - 1.0) > 1e-6) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": point is not on the unit sphere (norm " + std::to_string(norm) + ")");
    }
    points.emplace_back(values[0], values[1], values[2]);
    if (mode == WeightMode::from_file) {
      if (values.size() != 4) {
        throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": missing weight column");
      }
      if (!(values[3] > 0.0)) {
        throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": weight must be positive");
      }
      weights.push_back(values[3]);
    }
  }
  if (points.empty()) throw ValidationError("point file " + path.string() + " contains no points");
  QuadratureRule rule;
  if (mode == WeightMode::equal) {
    rule = equal_weight_rule(std::move(points), path.filename().string());
  } else {
    rule.points = std::move(points);
    rule.weights = std::move(weights);
    rule.label = path.filename().string();
  }
  rule.validate();
  return rule;
}

void write_pointset(const std::filesystem::path& path, const QuadratureRule& rule) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write point file " + path.string());
  out << "# " << rule.label << ", " << rule.size() << " points\n";
  out.precision(17);
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const SpherePoint& p = rule.points[j];
    out << p.x() << ' ' << p.y() << ' ' << p.z() << ' ' << rule.weights[j] << '\n';
  }
  if (!out) throw ValidationError("write failed for " + path.string());
}

namespace {

// Area of the polar cap of colatitude theta, and its inverse.
double cap_area(double theta) { return 2.0 * std::numbers::pi * (1.0 - std::cos(theta)); }
double cap_colatitude(double area) {
  return 2.0 * std::asin(std::min(1.0, std::sqrt(area / (4.0 * std::numbers::pi))));
}

}  // namespace

EqualAreaZones equal_area_zones(std::size_t m) {
  if (m == 0) throw ValidationError("equal_area_points: m must be positive");
  constexpr double pi = std::numbers::pi;
  EqualAreaZones zones;
  if (m == 1) {
    zones.boundaries = {0.0, pi};
    zones.counts = {1};
    return zones;
  }
  const double region_area = 4.0 * pi / static_cast<double>(m);
  const double polar = cap_colatitude(region_area);
  if (m == 2) {
    zones.boundaries = {0.0, polar, pi};
    zones.counts = {1, 1};
    return zones;
  }
  const double ideal_angle = std::sqrt(region_area);
  const std::size_t n_collars =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::llround((pi - 2.0 * polar) / ideal_angle)));
  const double fitting_angle = (pi - 2.0 * polar) / static_cast<double>(n_collars);

  // Ideal (fractional) region counts per collar, rounded with carry so the
  // total stays m - 2.
  std::vector<std::size_t> counts(n_collars);
  double carry = 0.0;
  for (std::size_t i = 0; i < n_collars; ++i) {
    const double top = polar + static_cast<double>(i) * fitting_angle;
    const double ideal = (cap_area(top + fitting_angle) - cap_area(top)) / region_area;
    const double rounded = std::round(ideal + carry);
    carry += ideal - rounded;
    counts[i] = static_cast<std::size_t>(rounded);
  }

  zones.counts.push_back(1);
  zones.boundaries.push_back(0.0);
  zones.boundaries.push_back(polar);
  std::size_t cumulative = 1;
  for (std::size_t i = 0; i < n_collars; ++i) {
    cumulative += counts[i];
    zones.counts.push_back(counts[i]);
    zones.boundaries.push_back(i + 1 == n_collars
                                   ? pi - polar
                                   : cap_colatitude(static_cast<double>(cumulative) * region_area));
  }
  zones.counts.push_back(1);
  zones.boundaries.push_back(pi);
  return zones;
}

QuadratureRule equal_area_points(std::size_t m) {
  const EqualAreaZones zones = equal_area_zones(m);
  constexpr double pi = std::numbers::pi;
  std::vector<SpherePoint> points;
  points.reserve(m);
  const std::size_t n_zones = zones.counts.size();
  double offset = 0.0;  // rotation of each collar, in units of a full turn
  std::size_t prev_count = 0;
  for (std::size_t i = 0; i < n_zones; ++i) {
    const std::size_t count = zones.counts[i];
    double theta;
    if (i == 0 && zones.boundaries[0] == 0.0 && count == 1 && n_zones > 1) {
      theta = 0.0;
    } else if (i + 1 == n_zones && count == 1 && n_zones > 1) {
      theta = pi;
    } else {
      theta = 0.5 * (zones.boundaries[i] + zones.boundaries[i + 1]);
    }
    if (m == 1) theta = 0.0;
    if (count > 1 && prev_count > 1) {
      // Twist consecutive collars so their points do not line up.
      const double a = static_cast<double>(prev_count), b = static_cast<double>(count);
      offset += 0.5 * (1.0 / a - 1.0 / b) +
                static_cast<double>(std::gcd(prev_count, count)) / (2.0 * a * b);
      offset -= std::floor(offset);
    }
    for (std::size_t k = 0; k < count; ++k) {
      const double phi = 2.0 * pi * (offset + (static_cast<double>(k) + 0.5) / static_cast<double>(count));
      const double s = std::sin(theta);
      points.emplace_back(s * std::cos(phi), s * std::sin(phi), std::cos(theta));
    }
    prev_count = count;
  }
  return equal_weight_rule(std::move(points), "equal_area:" + std::to_string(m));
}

QuadratureRule random_rule(std::size_t m, std::uint64_t seed) {
  EvaluationGrid grid = uniform_random_points(m, seed);
  return equal_weight_rule(std::move(grid.points),
                           "random:" + std::to_string(m) + ":" + std::to_string(seed));
}

}  // namespace sphnys
