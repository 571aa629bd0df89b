#include "sphnys/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "sphnys/error.hpp"

namespace sphnys {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw ValidationError("gauss_legendre: n must be positive");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 1; k < n; ++k) {
        const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 1; k < n; ++k) {
      const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

GaussRule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw ValidationError("gauss_jacobi: n must be positive");
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw ValidationError("gauss_jacobi: exponents must exceed -1");
  }
  const double s = alpha + beta;
  // Symmetric Jacobi matrix of the monic Jacobi recurrence.
  Eigen::VectorXd diag(n), sub(std::max(n - 1, 1));
  diag(0) = (beta - alpha) / (s + 2.0);
  for (int k = 1; k < n; ++k) {
    const double d = 2.0 * k + s;
    diag(k) = (beta * beta - alpha * alpha) / (d * (d + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double d = 2.0 * k + s;
    double b2;
    if (k == 1) {
      // (k + s) / (2k + s - 1) cancels to 1; keeps alpha + beta = -1 finite.
      b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + s) * (2.0 + s) * (3.0 + s));
    } else {
      b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + s) / (d * d * (d + 1.0) * (d - 1.0));
    }
    sub(k - 1) = std::sqrt(b2);
  }
  const double mu0 = std::exp((s + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                              std::lgamma(beta + 1.0) - std::lgamma(s + 2.0));
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = diag(0);
    rule.weights[0] = mu0;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  Eigen::VectorXd off = sub.head(n - 1);
  eig.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  if (eig.info() != Eigen::Success) throw NumericalError("gauss_jacobi: eigen-solver failed");
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = eig.eigenvalues()(i);
    const double v = eig.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v * v;
  }
  return rule;
}

namespace {

const GaussRule& piece_rule() {
  static const GaussRule rule = gauss_legendre(32);
  return rule;
}

// Adds the 32-node integral over the piece whose distance to the endpoint
// (+1 or -1) ranges over [d_lo, d_hi] into acc. Nodes live in the distance
// variable so that arguments next to the endpoint keep relative precision.
void integrate_piece(const VectorIntegrand& f, double d_lo, double d_hi, bool toward_plus_one,
                     std::span<double> acc, std::span<double> scratch) {
  const GaussRule& rule = piece_rule();
  const double half = 0.5 * (d_hi - d_lo);
  const double mid = 0.5 * (d_hi + d_lo);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double d = mid + half * rule.nodes[i];
    ProfileArg a{};
    if (toward_plus_one) {
      a.one_minus_t = d;
      a.t = 1.0 - d;
      a.one_plus_t = 2.0 - d;
    } else {
      a.one_plus_t = d;
      a.t = d - 1.0;
      a.one_minus_t = 2.0 - d;
    }
    f(a, scratch);
    const double w = half * rule.weights[i];
    for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += w * scratch[c];
  }
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

VectorIntegralResult integrate_endpoint_refined(const VectorIntegrand& f, std::size_t dimension,
                                                const RefinementOptions& opts) {
  std::vector<double> value(dimension, 0.0), error(dimension, 0.0);
  std::vector<double> whole(dimension), split(dimension), remainder(dimension, 0.0),
      scratch(dimension);
  int level = 0;
  double hi = 1.0;
  bool done = false;
  for (level = 0; level < opts.max_levels && !done; ++level) {
    const double lo = 0.5 * hi;
    for (bool plus : {true, false}) {
      std::fill(whole.begin(), whole.end(), 0.0);
      std::fill(split.begin(), split.end(), 0.0);
      integrate_piece(f, lo, hi, plus, whole, scratch);
      integrate_piece(f, lo, 0.5 * (lo + hi), plus, split, scratch);
      integrate_piece(f, 0.5 * (lo + hi), hi, plus, split, scratch);
      for (std::size_t c = 0; c < dimension; ++c) {
        value[c] += split[c];
        error[c] += std::abs(split[c] - whole[c]);
      }
    }
    hi = lo;
    if (level + 1 >= opts.min_levels) {
      // What is left is [0, hi] next to each endpoint; its 32-node estimate is
      // added to the value and counted entirely as error.
      std::fill(remainder.begin(), remainder.end(), 0.0);
      for (bool plus : {true, false}) integrate_piece(f, 0.0, hi, plus, remainder, scratch);
      done = true;
      for (std::size_t c = 0; c < dimension; ++c) {
        if (std::abs(remainder[c]) + error[c] > opts.tolerance * (1.0 + std::abs(value[c]))) {
          done = false;
        }
      }
    }
  }
  VectorIntegralResult result;
  result.converged = true;
  for (std::size_t c = 0; c < dimension; ++c) {
    value[c] += remainder[c];
    error[c] += std::abs(remainder[c]);
    if (!(error[c] <= opts.tolerance * (1.0 + std::abs(value[c])))) result.converged = false;
  }
  result.error_estimate = max_abs(error);
  result.values = std::move(value);
  result.levels = level;
  return result;
}

IntegralResult integrate_endpoint_refined(const Integrand& f, const RefinementOptions& opts) {
  const VectorIntegrand wrapped = [&f](const ProfileArg& a, std::span<double> out) { out[0] = f(a); };
  const VectorIntegralResult r = integrate_endpoint_refined(wrapped, 1, opts);
  IntegralResult result;
  result.value = r.values[0];
  result.error_estimate = r.error_estimate;
  result.levels = r.levels;
  result.converged = r.converged;
  return result;
}

}  // namespace sphnys
