#pragma once

#include <Eigen/Core>
#include <span>
#include <string>

#include "sphnys/harmonics.hpp"
#include "sphnys/pointsets.hpp"

namespace sphnys {

/// Coefficients of L_n g in the flat harmonic order.
struct HyperCoefficients {
  int n = 0;
  Eigen::VectorXd coeffs;
  std::string rule_label;
};

/// Caches the weighted basis matrix of a rule so that repeated projections
/// are one matrix-vector product each.
class Hyperinterpolator {
 public:
  Hyperinterpolator(const QuadratureRule& rule, int n);

  int degree() const { return n_; }
  std::size_t num_points() const { return static_cast<std::size_t>(weighted_.cols()); }

  /// coeffs[i] = sum_j w_j g(x_j) Y_i(x_j)
  HyperCoefficients coefficients(std::span<const double> samples) const;
  /// Discrete inner-product matrix; equals gram_matrix(rule, n).
  Eigen::MatrixXd inner_product_matrix() const;

 private:
  int n_;
  std::string label_;
  BasisMatrix basis_;     // Y_i(x_j)
  BasisMatrix weighted_;  // w_j Y_i(x_j)
};

HyperCoefficients hyper_coefficients(const QuadratureRule& rule, int n, std::span<const double> samples);

/// sum_i coeffs[i] Y_i(t)
double hyper_evaluate(const HyperCoefficients& c, const SpherePoint& t);

/// L^2(S^2) norm of L_n g (Parseval).
double hyper_l2_norm(const HyperCoefficients& c);

}  // namespace sphnys
