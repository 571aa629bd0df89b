#include "sphnys/hyperinterp.hpp"

#include "sphnys/error.hpp"

namespace sphnys {

namespace {
const QuadratureRule& validated(const QuadratureRule& rule) {
  rule.validate();
  return rule;
}
}  // namespace

Hyperinterpolator::Hyperinterpolator(const QuadratureRule& rule, int n)
    : n_(n), label_(rule.label), basis_(eval_basis_matrix(HarmonicBasis(n), validated(rule).points)) {
  const Eigen::Map<const Eigen::VectorXd> w(rule.weights.data(),
                                            static_cast<Eigen::Index>(rule.weights.size()));
  weighted_ = basis_ * w.asDiagonal();
}

HyperCoefficients Hyperinterpolator::coefficients(std::span<const double> samples) const {
  if (samples.size() != num_points()) {
    throw ValidationError("hyperinterpolation: " + std::to_string(samples.size()) +
                          " samples for " + std::to_string(num_points()) + " points");
  }
  const Eigen::Map<const Eigen::VectorXd> g(samples.data(), static_cast<Eigen::Index>(samples.size()));
  return {n_, weighted_ * g, label_};
}

Eigen::MatrixXd Hyperinterpolator::inner_product_matrix() const {
  Eigen::MatrixXd g = weighted_ * basis_.transpose();
  return 0.5 * (g + g.transpose());
}

HyperCoefficients hyper_coefficients(const QuadratureRule& rule, int n, std::span<const double> samples) {
  if (samples.size() != rule.size()) {
    throw ValidationError("hyperinterpolation: sample count does not match the rule");
  }
  return Hyperinterpolator(rule, n).coefficients(samples);
}

double hyper_evaluate(const HyperCoefficients& c, const SpherePoint& t) {
  const SpherePoint one[] = {t};
  const BasisMatrix y = eval_basis_matrix(HarmonicBasis(c.n), one);
  return c.coeffs.dot(y.col(0));
}

double hyper_l2_norm(const HyperCoefficients& c) { return c.coeffs.norm(); }

}  // namespace sphnys
