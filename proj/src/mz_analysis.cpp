#include "sphnys/mz_analysis.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "sphnys/error.hpp"
#include "sphnys/harmonics.hpp"

namespace sphnys {

std::string MZReport::status() const {
  return mz_holds() ? "MZ property holds (eta < 1)" : "MZ property fails (eta >= 1)";
}

namespace {

Eigen::Map<const Eigen::VectorXd> weight_vector(const QuadratureRule& rule) {
  return {rule.weights.data(), static_cast<Eigen::Index>(rule.weights.size())};
}

// Signed residuals sum_j w_j Y_i(x_j) - sqrt(4 pi) [i = 0] for all i up to degree d.
Eigen::VectorXd harmonic_residuals(const QuadratureRule& rule, int d) {
  const BasisMatrix basis = eval_basis_matrix(HarmonicBasis(d), rule.points);
  Eigen::VectorXd r = basis * weight_vector(rule);
  r(0) -= std::sqrt(4.0 * std::numbers::pi);
  return r;
}

}  // namespace

Eigen::MatrixXd gram_matrix(const QuadratureRule& rule, int n) {
  rule.validate();
  const BasisMatrix basis = eval_basis_matrix(HarmonicBasis(n), rule.points);
  const BasisMatrix weighted = basis * weight_vector(rule).asDiagonal();
  Eigen::MatrixXd g = weighted * basis.transpose();
  // symmetrize away the rounding asymmetry of the product
  return 0.5 * (g + g.transpose());
}

namespace {

std::pair<double, double> extreme_eigenvalues(const Eigen::MatrixXd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalError("Gram eigenvalue computation failed");
  return {eig.eigenvalues().minCoeff(), eig.eigenvalues().maxCoeff()};
}

}  // namespace

double mz_eta(const QuadratureRule& rule, int n) {
  const auto [lo, hi] = extreme_eigenvalues(gram_matrix(rule, n));
  return std::max({hi - 1.0, 1.0 - lo, 0.0});
}

MZReport mz_constant(const QuadratureRule& rule, int n, const MZOptions& opts) {
  MZReport report;
  report.n = n;
  const auto [lo, hi] = extreme_eigenvalues(gram_matrix(rule, n));
  report.lambda_min = lo;
  report.lambda_max = hi;
  report.eta = std::max({hi - 1.0, 1.0 - lo, 0.0});

  const Eigen::VectorXd r = harmonic_residuals(rule, 2 * n + 1);
  report.exact_to = -1;
  for (int l = 0; l <= 2 * n + 1; ++l) {
    const double worst = r.segment(l * l, 2 * l + 1).cwiseAbs().maxCoeff();
    if (worst > opts.exactness_tolerance) break;
    report.exact_to = l;
  }

  if (opts.probe_points >= 0) {
    const long long count = opts.probe_points > 0
                                ? opts.probe_points
                                : std::max<long long>(100LL * static_cast<long long>(rule.size()), 20000);
    const EvaluationGrid probe = uniform_random_points(static_cast<std::size_t>(count), opts.probe_seed);
    report.mesh_norm = mesh_norm(rule.points, probe);
    report.degree_bound = report.mesh_norm > 0.0 ? report.eta / (2.0 * report.mesh_norm) : 0.0;
  }
  return report;
}

double quadrature_error_on_harmonics(const QuadratureRule& rule, int d) {
  if (d < 0) throw ValidationError("degree must be non-negative");
  return harmonic_residuals(rule, d).cwiseAbs().maxCoeff();
}

}  // namespace sphnys
