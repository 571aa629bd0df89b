#include "sphnys/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sphnys/error.hpp"
#include "sphnys/simd/kernels.hpp"

namespace sphnys {

HarmonicIndex::HarmonicIndex(int degree, int order) : degree_(degree), order_(order) {
  if (degree < 0 || order < 1 || order > 2 * degree + 1) {
    throw ValidationError("invalid harmonic index (" + std::to_string(degree) + ", " +
                          std::to_string(order) + ")");
  }
}

HarmonicIndex HarmonicIndex::from_flat(int flat) {
  if (flat < 0) throw ValidationError("negative flat harmonic index");
  int l = static_cast<int>(std::sqrt(static_cast<double>(flat)));
  while (l * l > flat) --l;
  while ((l + 1) * (l + 1) <= flat) ++l;
  return HarmonicIndex(l, flat - l * l + 1);
}

HarmonicBasis::HarmonicBasis(int max_degree) : n_(max_degree) {
  if (max_degree < 0) throw ValidationError("harmonic basis degree must be non-negative");
}

HarmonicIndex HarmonicBasis::index(int flat) const {
  if (flat >= size()) throw ValidationError("flat index outside the basis");
  return HarmonicIndex::from_flat(flat);
}

double legendre_p(int degree, double t) {
  if (degree < 0) throw ValidationError("Legendre degree must be non-negative");
  if (!(std::abs(t) <= 1.0 + 1e-12)) throw ValidationError("Legendre argument outside [-1, 1]");
  t = std::clamp(t, -1.0, 1.0);
  if (degree == 0) return 1.0;
  double p0 = 1.0, p1 = t;
  for (int l = 1; l < degree; ++l) {
    const double p2 = ((2.0 * l + 1.0) * t * p1 - l * p0) / (l + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double eval_harmonic(const HarmonicIndex& idx, const SpherePoint& x) {
  const int l = idx.degree();
  const int m = std::abs(idx.azimuthal());
  // Q_l^m(z) from the normalized diagonal upward in l.
  double q = 1.0 / std::sqrt(4.0 * std::numbers::pi);
  for (int k = 1; k <= m; ++k) q *= std::sqrt((2.0 * k + 1.0) / (2.0 * k));
  double q_prev = 0.0;
  for (int k = m + 1; k <= l; ++k) {
    double next;
    if (k == m + 1) {
      next = std::sqrt(2.0 * m + 3.0) * x.z() * q;
    } else {
      const double a = std::sqrt((4.0 * k * k - 1.0) / (double(k) * k - double(m) * m));
      const double b = std::sqrt((double(k - 1) * (k - 1) - double(m) * m) /
                                 (4.0 * (k - 1) * (k - 1) - 1.0));
      next = a * (x.z() * q - b * q_prev);
    }
    q_prev = q;
    q = next;
  }
  if (m == 0) return q;
  double re = 1.0, im = 0.0;
  for (int k = 0; k < m; ++k) {
    const double r = re * x.x() - im * x.y();
    im = re * x.y() + im * x.x();
    re = r;
  }
  return std::numbers::sqrt2 * q * (idx.azimuthal() > 0 ? re : im);
}

BasisMatrix eval_basis_matrix(const HarmonicBasis& basis, const PointColumns& points) {
  BasisMatrix out(basis.size(), static_cast<Eigen::Index>(points.size()));
  if (points.size() == 0) return out;
  simd::kernels().real_harmonics(basis.max_degree(), points.x, points.y, points.z, out.data(),
                                 points.size());
  return out;
}

BasisMatrix eval_basis_matrix(const HarmonicBasis& basis, std::span<const SpherePoint> points) {
  return eval_basis_matrix(basis, PointColumns(points));
}

double addition_kernel(int degree, const SpherePoint& x, const SpherePoint& y) {
  return (2.0 * degree + 1.0) / (4.0 * std::numbers::pi) *
         legendre_p(degree, std::clamp(x.dot(y), -1.0, 1.0));
}

}  // namespace sphnys
