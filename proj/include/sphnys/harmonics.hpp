#pragma once

#include <Eigen/Core>
#include <span>

#include "sphnys/sphere.hpp"

namespace sphnys {

/// Harmonic values indexed [flat harmonic][point]; row-major so that a row
/// (one harmonic over all points) is contiguous.
using BasisMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Degree l >= 0 and order k in [1, 2l+1] of a real spherical harmonic.
///
/// Order convention: k = 1..l are the sin(m phi) components for m = l..1,
/// k = l+1 is the zonal m = 0 function, and k = l+2..2l+1 are the
/// cos(m phi) components for m = 1..l.
class HarmonicIndex {
 public:
  HarmonicIndex(int degree, int order);

  int degree() const { return degree_; }
  int order() const { return order_; }
  /// Signed azimuthal number: negative for sine components, 0 for zonal.
  int azimuthal() const { return order_ - degree_ - 1; }
  /// Position in the flat ordering (0,1), (1,1), (1,2), (1,3), (2,1), ...
  int flat() const { return degree_ * degree_ + order_ - 1; }

  static HarmonicIndex from_flat(int flat);

  friend bool operator==(const HarmonicIndex&, const HarmonicIndex&) = default;

 private:
  int degree_;
  int order_;
};

/// All real harmonics of degree <= n in flat order; dim P_n = (n+1)^2.
class HarmonicBasis {
 public:
  explicit HarmonicBasis(int max_degree);

  int max_degree() const { return n_; }
  int size() const { return (n_ + 1) * (n_ + 1); }
  HarmonicIndex index(int flat) const;

 private:
  int n_;
};

/// Legendre polynomial P_l(t) by the three-term recurrence.
/// Throws ValidationError when |t| > 1 + 1e-12.
double legendre_p(int degree, double t);

/// Real spherical harmonic, orthonormal for the raw surface measure (mass 4 pi),
/// without the Condon-Shortley phase.
double eval_harmonic(const HarmonicIndex& idx, const SpherePoint& x);

/// Entry (i, j) = Y_i(x_j) for all harmonics of the basis.
BasisMatrix eval_basis_matrix(const HarmonicBasis& basis, std::span<const SpherePoint> points);
BasisMatrix eval_basis_matrix(const HarmonicBasis& basis, const PointColumns& points);

/// sum_k Y_{l,k}(x) Y_{l,k}(y) = (2l+1)/(4 pi) P_l(x.y)
double addition_kernel(int degree, const SpherePoint& x, const SpherePoint& y);

}  // namespace sphnys
