#pragma once

// One-dimensional rules on [-1, 1] backing the modified-moment computations.

#include <functional>
#include <span>
#include <vector>

namespace sphnys {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton iteration on P_n).
GaussRule gauss_legendre(int n);

/// n-point Gauss-Jacobi rule for the weight (1-t)^alpha (1+t)^beta,
/// alpha, beta > -1, by the Golub-Welsch eigenvalue method.
GaussRule gauss_jacobi(int n, double alpha, double beta);

/// Integrand argument carrying both endpoint distances exactly, so that
/// factors like (1-t)^a stay accurate when t is within rounding of +-1.
struct ProfileArg {
  double t;
  double one_minus_t;
  double one_plus_t;
};

using Integrand = std::function<double(const ProfileArg&)>;
/// Vector-valued integrand writing `dimension` components into out.
using VectorIntegrand = std::function<void(const ProfileArg&, std::span<double> out)>;

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int levels = 0;
  bool converged = false;
};

struct RefinementOptions {
  int min_levels = 60;
  int max_levels = 200;
  double tolerance = 1e-12;  // relative to 1 + |value|
};

/// Composite Gauss-Legendre over [-1, 1] with geometric refinement toward both
/// endpoints: [0, 1] is cut at 1 - 2^-k and [-1, 0] at -1 + 2^-k (ratio 1/2).
/// Each piece is integrated with 32 nodes on each of its halves; the error
/// estimate is the difference to the 32-node rule on the whole piece.
IntegralResult integrate_endpoint_refined(const Integrand& f, const RefinementOptions& opts = {});

struct VectorIntegralResult {
  std::vector<double> values;
  double error_estimate = 0.0;  // max over components
  int levels = 0;
  bool converged = false;
};

VectorIntegralResult integrate_endpoint_refined(const VectorIntegrand& f, std::size_t dimension,
                                                const RefinementOptions& opts = {});

}  // namespace sphnys
