#include "sphnys/solver.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "sphnys/error.hpp"
#include "sphnys/mz_analysis.hpp"
#include "sphnys/simd/kernels.hpp"

namespace sphnys {

ContinuousKernel ContinuousKernel::constant(double c) { return {Kind::constant, c}; }
ContinuousKernel ContinuousKernel::sin_scaled(double c) { return {Kind::sin_scaled, c}; }
ContinuousKernel ContinuousKernel::cos_scaled(double c) { return {Kind::cos_scaled, c}; }

ContinuousKernel ContinuousKernel::custom(Callback fn, std::string name) {
  if (!fn) throw ValidationError("custom kernel needs a callable");
  ContinuousKernel k(Kind::custom, 0.0);
  k.fn_ = std::move(fn);
  k.name_ = std::move(name);
  return k;
}

double ContinuousKernel::from_dot(double t) const {
  return from_distance(std::sqrt(std::max(0.0, 2.0 * (1.0 - t))));
}

double ContinuousKernel::from_distance(double r) const {
  switch (kind_) {
    case Kind::constant:
      return c_;
    case Kind::sin_scaled:
      return std::sin(c_ * r);
    case Kind::cos_scaled:
      return std::cos(c_ * r);
    case Kind::custom:
      break;
  }
  throw ValidationError("custom kernel has no zonal form");
}

double ContinuousKernel::operator()(const SpherePoint& x, const SpherePoint& y) const {
  if (kind_ == Kind::custom) return fn_(x, y);
  return from_distance(euclidean_distance(x, y));
}

std::string ContinuousKernel::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::constant:
      os << "const:" << c_;
      break;
    case Kind::sin_scaled:
      os << "sin:" << c_;
      break;
    case Kind::cos_scaled:
      os << "cos:" << c_;
      break;
    case Kind::custom:
      os << "custom:" << name_;
      break;
  }
  return os.str();
}

RightHandSide RightHandSide::constant(double c) {
  RightHandSide f;
  f.c_ = c;
  return f;
}

RightHandSide RightHandSide::custom(Callback fn, std::string name) {
  if (!fn) throw ValidationError("custom right-hand side needs a callable");
  RightHandSide f;
  f.fn_ = std::move(fn);
  f.name_ = std::move(name);
  return f;
}

std::string RightHandSide::describe() const {
  if (fn_) return "custom:" + name_;
  std::ostringstream os;
  os.precision(17);
  os << "const:" << c_;
  return os.str();
}

void ProblemSpec::validate() const {
  if (n < 0) throw ValidationError("degree n must be non-negative");
  rule.validate();
}

ProductWeights::ProductWeights(const QuadratureRule& rule, const ModifiedMoments& moments)
    : cols_(rule.points), weights_(rule.weights), series_(moments.values.size()) {
  for (std::size_t l = 0; l < series_.size(); ++l) {
    series_[l] = moments.values[l] * (2.0 * static_cast<double>(l) + 1.0) / (4.0 * std::numbers::pi);
  }
}

void ProductWeights::row(const SpherePoint& x, std::span<double> out, std::span<double> dots) const {
  const auto& k = simd::kernels();
  k.dot_many(cols_.x, cols_.y, cols_.z, x.coords().data(), dots);
  for (double& t : dots) t = std::clamp(t, -1.0, 1.0);
  k.legendre_series(series_, dots, out);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] *= weights_[j];
}

Eigen::VectorXd weight_row(const QuadratureRule& rule, const ModifiedMoments& moments, const SpherePoint& x) {
  const ProductWeights pw(rule, moments);
  Eigen::VectorXd out(static_cast<Eigen::Index>(rule.size()));
  std::vector<double> dots(rule.size());
  pw.row(x, {out.data(), rule.size()}, dots);
  return out;
}

namespace {

void check_consistent(const ProblemSpec& spec, const ModifiedMoments& moments) {
  spec.validate();
  if (moments.n != spec.n) {
    throw ValidationError("moments computed to degree " + std::to_string(moments.n) +
                          " but the problem uses n = " + std::to_string(spec.n));
  }
}

// K(x, x_j) for all j. Zonal kernels take the chord length from coordinates:
// sqrt(2(1 - x.y)) loses half the digits next to the diagonal.
void kernel_row(const ContinuousKernel& K, const SpherePoint& x, std::span<const SpherePoint> nodes,
                std::span<double> out) {
  if (K.kind() == ContinuousKernel::Kind::constant) {
    std::fill(out.begin(), out.end(), K.parameter());
  } else if (K.is_zonal()) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = K.from_distance(euclidean_distance(x, nodes[j]));
  } else {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = K(x, nodes[j]);
  }
}

}  // namespace

LinearSystem assemble_system(const ProblemSpec& spec, const ModifiedMoments& moments) {
  check_consistent(spec, moments);
  const std::size_t m = spec.rule.size();
  const ProductWeights pw(spec.rule, moments);
  LinearSystem sys;
  // Rows are built contiguously and stored as columns of the transpose.
  Eigen::MatrixXd transposed(m, m);
  sys.rhs.resize(static_cast<Eigen::Index>(m));
  std::vector<double> w(m), dots(m), kv(m);
  for (std::size_t i = 0; i < m; ++i) {
    const SpherePoint& xi = spec.rule.points[i];
    pw.row(xi, w, dots);
    kernel_row(spec.K, xi, spec.rule.points, kv);
    double* col = transposed.col(static_cast<Eigen::Index>(i)).data();
    for (std::size_t j = 0; j < m; ++j) col[j] = -w[j] * kv[j];
    col[i] += 1.0;
    sys.rhs(static_cast<Eigen::Index>(i)) = spec.f(xi);
  }
  sys.matrix = transposed.transpose();
  return sys;
}

DiscreteSolution solve_stage1(const ProblemSpec& spec, const ModifiedMoments& moments,
                              const SolveOptions& opts) {
  const LinearSystem sys = assemble_system(spec, moments);
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.matrix);

  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  const double smallest = pivots.minCoeff();
  const double scale = sys.matrix.cwiseAbs().maxCoeff();
  DiscreteSolution sol{Eigen::VectorXd(), spec, moments, {}, 0.0, 0.0, {}};
  sol.rcond = lu.rcond();
  const double eps = std::numeric_limits<double>::epsilon();
  if (!(smallest > eps * scale) || !(sol.rcond > eps)) {
    std::ostringstream os;
    os << "stage-1 matrix is singular to working precision (smallest pivot " << smallest << ")";
    throw NumericalError(os.str());
  }
  if (1.0 / sol.rcond > opts.condition_warning) {
    std::ostringstream os;
    os << "condition estimate " << 1.0 / sol.rcond << " exceeds " << opts.condition_warning;
    sol.warnings.push_back(os.str());
  }

  sol.nodal_values = lu.solve(sys.rhs);
  Eigen::VectorXd r = sys.rhs - sys.matrix * sol.nodal_values;
  const double target = 1e-10 * (1.0 + sys.rhs.lpNorm<Eigen::Infinity>());
  for (int refine = 0; refine < 2 && r.lpNorm<Eigen::Infinity>() > target; ++refine) {
    sol.nodal_values += lu.solve(r);
    r = sys.rhs - sys.matrix * sol.nodal_values;
  }
  sol.residual = r.lpNorm<Eigen::Infinity>();
  if (!std::isfinite(sol.residual)) throw NumericalError("stage-1 solve produced non-finite values");
  if (sol.residual > target) sol.warnings.push_back("stage-1 residual above 1e-10 (1 + |f|)");

  sol.gamma.m = spec.rule.size();
  sol.gamma.n = spec.n;
  sol.gamma.eta = opts.compute_eta ? mz_eta(spec.rule, spec.n) : std::nan("");
  return sol;
}

DiscreteSolution solve_stage1(const ProblemSpec& spec, const SolveOptions& opts) {
  spec.validate();
  return solve_stage1(spec, compute_moments(spec.h, spec.n), opts);
}

std::vector<double> evaluate_stage2(const DiscreteSolution& sol, std::span<const SpherePoint> targets) {
  const ProblemSpec& spec = sol.spec;
  const std::size_t m = spec.rule.size();
  const ProductWeights pw(spec.rule, sol.moments);
  std::vector<double> w(m), dots(m), kv(m), out;
  out.reserve(targets.size());
  for (const SpherePoint& t : targets) {
    pw.row(t, w, dots);
    kernel_row(spec.K, t, spec.rule.points, kv);
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) acc += w[j] * kv[j] * sol.nodal_values(static_cast<Eigen::Index>(j));
    out.push_back(spec.f(t) + acc);
  }
  return out;
}

double evaluate_stage2(const DiscreteSolution& sol, const SpherePoint& t) {
  const SpherePoint one[] = {t};
  return evaluate_stage2(sol, one).front();
}

double uniform_error(const DiscreteSolution& sol, const std::function<double(const SpherePoint&)>& exact,
                     const EvaluationGrid& grid) {
  const std::vector<double> values = evaluate_stage2(sol, grid.points);
  double worst = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double e = std::abs(values[i] - exact(grid.points[i]));
    if (!std::isfinite(e)) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, e);
  }
  return worst;
}

}  // namespace sphnys
