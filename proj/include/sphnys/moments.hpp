#pragma once

#include <string>
#include <vector>

#include "sphnys/quadrature.hpp"

namespace sphnys {

/// Zonal weight h(|x - y|) of the integral operator.
///
///   one        h = 1
///   algebraic  h = |x-y|^nu,                 -1 < nu < 0 (nu >= 0 allowed)
///   log        h = log |x-y|
///   mixed      h = |x-y|^nu1 |x+y|^nu2,      -1 <= nu1, nu2 < 0
class SingularKernel {
 public:
  enum class Family { one, algebraic, log, mixed };

  static SingularKernel one();
  static SingularKernel algebraic(double nu);
  static SingularKernel log();
  static SingularKernel mixed(double nu1, double nu2);

  Family family() const { return family_; }
  double nu1() const { return nu1_; }
  double nu2() const { return nu2_; }

  /// h as a function of the chordal distance r = |x - y|.
  double operator()(double r) const;
  /// h(sqrt(2(1-t))), evaluated from the exact endpoint distances.
  double profile(const ProfileArg& a) const;

  std::string describe() const;

 private:
  SingularKernel(Family f, double nu1, double nu2) : family_(f), nu1_(nu1), nu2_(nu2) {}
  Family family_;
  double nu1_;
  double nu2_;
};

/// mu_l = 2 pi int_{-1}^{1} h(sqrt(2(1-t))) P_l(t) dt for l = 0..n.
struct ModifiedMoments {
  enum class Method { closed_form, gauss_jacobi, oracle };

  SingularKernel kernel;
  int n = 0;
  std::vector<double> values;
  Method method = Method::closed_form;

  double operator[](int l) const { return values.at(static_cast<std::size_t>(l)); }
};

const char* method_name(ModifiedMoments::Method m);

ModifiedMoments moments_one(int n);
ModifiedMoments moments_algebraic(double nu, int n);
/// mu_0 in closed form; mu_l for l >= 1 from the oracle, replaced by
/// -2 pi / (l (l+1)) only when the oracle confirms it to 1e-10 for every l.
ModifiedMoments moments_log(int n);
/// Gauss-Jacobi quadrature with exponents (nu1/2, nu2/2) and n + 20 nodes.
ModifiedMoments moments_mixed(double nu1, double nu2, int n);
/// Dispatches on the kernel family.
ModifiedMoments compute_moments(const SingularKernel& kernel, int n);

struct OracleMoment {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
};

/// 2 pi int_{-1}^{1} h1d(t) P_l(t) dt with endpoint-refined composite
/// Gauss-Legendre; `converged` is false when the error estimate misses
/// tolerance * (1 + |value|).
OracleMoment oracle_moment(const Integrand& h1d, int l, double tolerance = 1e-12);

/// 2 pi int_{-1}^{1} h(sqrt(2(1-t))) * g(sqrt(2(1-t))) dt: the surface integral
/// of h(|x-y|) g(|x-y|) over y for any fixed x.
OracleMoment oracle_zonal_integral(const SingularKernel& h, const std::function<double(double)>& g,
                                   double tolerance = 1e-12);

}  // namespace sphnys
