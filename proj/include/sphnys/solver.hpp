#pragma once

#include <Eigen/Core>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sphnys/moments.hpp"
#include "sphnys/pointsets.hpp"

namespace sphnys {

/// Continuous factor K(x, y) of the integral operator.
class ContinuousKernel {
 public:
  enum class Kind { constant, sin_scaled, cos_scaled, custom };
  using Callback = std::function<double(const SpherePoint&, const SpherePoint&)>;

  static ContinuousKernel constant(double c);
  /// sin(c |x - y|)
  static ContinuousKernel sin_scaled(double c);
  /// cos(c |x - y|)
  static ContinuousKernel cos_scaled(double c);
  static ContinuousKernel custom(Callback fn, std::string name);

  Kind kind() const { return kind_; }
  double parameter() const { return c_; }
  bool is_zonal() const { return kind_ != Kind::custom; }

  double operator()(const SpherePoint& x, const SpherePoint& y) const;
  /// Value for a zonal kernel from the dot product x.y.
  double from_dot(double t) const;
  /// Value for a zonal kernel from the chord length r = |x - y|.
  double from_distance(double r) const;
  std::string describe() const;

 private:
  ContinuousKernel(Kind k, double c) : kind_(k), c_(c) {}
  Kind kind_;
  double c_;
  Callback fn_;
  std::string name_;
};

/// Right-hand side f of the equation.
class RightHandSide {
 public:
  using Callback = std::function<double(const SpherePoint&)>;

  static RightHandSide constant(double c);
  static RightHandSide custom(Callback fn, std::string name);

  bool is_constant() const { return !fn_; }
  double constant_value() const { return c_; }
  double operator()(const SpherePoint& x) const { return fn_ ? fn_(x) : c_; }
  std::string describe() const;

 private:
  double c_ = 0.0;
  Callback fn_;
  std::string name_;
};

/// phi(x) - int h(|x-y|) K(x,y) phi(y) dw(y) = f(x), discretized at degree n on `rule`.
struct ProblemSpec {
  SingularKernel h = SingularKernel::one();
  ContinuousKernel K = ContinuousKernel::constant(1.0);
  RightHandSide f = RightHandSide::constant(0.0);
  int n = 0;
  QuadratureRule rule;

  void validate() const;
};

/// Product-integration weights W_j(x) of one rule and one set of moments.
///
/// W_j(x) = w_j sum_{l<=n} mu_l (2l+1)/(4 pi) P_l(x . x_j), the addition
/// theorem form of w_j sum_{l,k} mu_l Y_{l,k}(x) Y_{l,k}(x_j).
class ProductWeights {
 public:
  ProductWeights(const QuadratureRule& rule, const ModifiedMoments& moments);

  std::size_t size() const { return weights_.size(); }
  /// Writes W_j(x) into out; dots receives x . x_j.
  void row(const SpherePoint& x, std::span<double> out, std::span<double> dots) const;

 private:
  PointColumns cols_;
  std::vector<double> weights_;
  std::vector<double> series_;  // mu_l (2l+1) / (4 pi)
};

Eigen::VectorXd weight_row(const QuadratureRule& rule, const ModifiedMoments& moments, const SpherePoint& x);

struct LinearSystem {
  Eigen::MatrixXd matrix;  // delta_ij - W_j(x_i) K(x_i, x_j)
  Eigen::VectorXd rhs;     // f(x_i)
};

LinearSystem assemble_system(const ProblemSpec& spec, const ModifiedMoments& moments);

/// gamma = (m, n, eta)
struct GammaIndex {
  std::size_t m = 0;
  int n = 0;
  double eta = 0.0;
};

struct SolveOptions {
  bool compute_eta = true;
  double condition_warning = 1e12;
};

struct DiscreteSolution {
  Eigen::VectorXd nodal_values;
  ProblemSpec spec;
  ModifiedMoments moments;
  GammaIndex gamma;
  double residual = 0.0;         // |M phi - b|_inf
  double rcond = 0.0;            // reciprocal condition estimate (1-norm)
  std::vector<std::string> warnings;
};

/// Stage 1: solve for the nodal values by LU with partial pivoting.
/// Throws NumericalError for a matrix singular to working precision.
DiscreteSolution solve_stage1(const ProblemSpec& spec, const ModifiedMoments& moments,
                              const SolveOptions& opts = {});
DiscreteSolution solve_stage1(const ProblemSpec& spec, const SolveOptions& opts = {});

/// Stage 2: phi(t) = f(t) + sum_j W_j(t) K(t, x_j) phi(x_j).
double evaluate_stage2(const DiscreteSolution& sol, const SpherePoint& t);
std::vector<double> evaluate_stage2(const DiscreteSolution& sol, std::span<const SpherePoint> targets);

/// max over the grid of |phi_gamma - exact|.
double uniform_error(const DiscreteSolution& sol, const std::function<double(const SpherePoint&)>& exact,
                     const EvaluationGrid& grid);

}  // namespace sphnys
