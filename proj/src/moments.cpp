#include "sphnys/moments.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sphnys/error.hpp"
#include "sphnys/harmonics.hpp"

namespace sphnys {

namespace {
constexpr double kPi = std::numbers::pi;
}

SingularKernel SingularKernel::one() { return {Family::one, 0.0, 0.0}; }

SingularKernel SingularKernel::algebraic(double nu) {
  if (!(nu > -1.0) || !std::isfinite(nu)) {
    throw ValidationError("algebraic kernel needs nu > -1 (got " + std::to_string(nu) + ")");
  }
  return {Family::algebraic, nu, 0.0};
}

SingularKernel SingularKernel::log() { return {Family::log, 0.0, 0.0}; }

SingularKernel SingularKernel::mixed(double nu1, double nu2) {
  if (!(nu1 >= -1.0 && nu1 < 0.0) || !(nu2 >= -1.0 && nu2 < 0.0)) {
    // nu2 = 0 is accepted: it reduces to the algebraic family.
    if (!(nu1 >= -1.0 && nu1 < 0.0 && nu2 == 0.0)) {
      throw ValidationError("mixed kernel needs -1 <= nu1, nu2 < 0");
    }
  }
  return {Family::mixed, nu1, nu2};
}

double SingularKernel::operator()(double r) const {
  switch (family_) {
    case Family::one:
      return 1.0;
    case Family::algebraic:
      return std::pow(r, nu1_);
    case Family::log:
      return std::log(r);
    case Family::mixed: {
      const double s = std::sqrt(std::max(0.0, 4.0 - r * r));  // |x + y|
      return std::pow(r, nu1_) * std::pow(s, nu2_);
    }
  }
  return 0.0;
}

double SingularKernel::profile(const ProfileArg& a) const {
  switch (family_) {
    case Family::one:
      return 1.0;
    case Family::algebraic:
      return std::pow(2.0 * a.one_minus_t, 0.5 * nu1_);
    case Family::log:
      return 0.5 * std::log(2.0 * a.one_minus_t);
    case Family::mixed:
      return std::pow(2.0 * a.one_minus_t, 0.5 * nu1_) * std::pow(2.0 * a.one_plus_t, 0.5 * nu2_);
  }
  return 0.0;
}

std::string SingularKernel::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (family_) {
    case Family::one:
      return "one";
    case Family::algebraic:
      os << "algebraic:" << nu1_;
      return os.str();
    case Family::log:
      return "log";
    case Family::mixed:
      os << "mixed:" << nu1_ << ":" << nu2_;
      return os.str();
  }
  return "?";
}

const char* method_name(ModifiedMoments::Method m) {
  switch (m) {
    case ModifiedMoments::Method::closed_form:
      return "closed_form";
    case ModifiedMoments::Method::gauss_jacobi:
      return "gauss_jacobi";
    case ModifiedMoments::Method::oracle:
      return "oracle";
  }
  return "?";
}

namespace {

void check_degree(int n) {
  if (n < 0) throw ValidationError("moment degree must be non-negative");
}

}  // namespace

ModifiedMoments moments_one(int n) {
  check_degree(n);
  ModifiedMoments mm{SingularKernel::one(), n, std::vector<double>(n + 1, 0.0),
                     ModifiedMoments::Method::closed_form};
  mm.values[0] = 4.0 * kPi;
  return mm;
}

ModifiedMoments moments_algebraic(double nu, int n) {
  check_degree(n);
  const SingularKernel kernel = SingularKernel::algebraic(nu);
  ModifiedMoments mm{kernel, n, std::vector<double>(n + 1, 0.0), ModifiedMoments::Method::closed_form};
  const double x = -0.5 * nu;  // Pochhammer base
  const double prefactor = std::pow(2.0, nu + 2.0) * kPi;
  if (x > 0.0) {
    // mu_l = 2^(nu+2) pi (x)_l Gamma(1 + nu/2) / Gamma(l + nu/2 + 2), all in log-Gamma
    const double lg_base = std::lgamma(x);
    const double lg_num = std::lgamma(0.5 * nu + 1.0);
    for (int l = 0; l <= n; ++l) {
      const double log_ratio = std::lgamma(x + l) - lg_base + lg_num - std::lgamma(l + 0.5 * nu + 2.0);
      mm.values[l] = prefactor * std::exp(log_ratio);
    }
  } else {
    // nu >= 0: (x)_l may vanish or change sign, so use the ratio
    // mu_l / mu_{l-1} = (x + l - 1) / (l + nu/2 + 1).
    mm.values[0] = prefactor / (0.5 * nu + 1.0);
    for (int l = 1; l <= n; ++l) {
      mm.values[l] = mm.values[l - 1] * (x + l - 1.0) / (l + 0.5 * nu + 1.0);
    }
  }
  return mm;
}

OracleMoment oracle_moment(const Integrand& h1d, int l, double tolerance) {
  check_degree(l);
  RefinementOptions opts;
  opts.tolerance = tolerance;
  const IntegralResult r = integrate_endpoint_refined(
      [&](const ProfileArg& a) { return h1d(a) * legendre_p(l, a.t); }, opts);
  return {2.0 * kPi * r.value, 2.0 * kPi * r.error_estimate, r.converged};
}

OracleMoment oracle_zonal_integral(const SingularKernel& h, const std::function<double(double)>& g,
                                   double tolerance) {
  RefinementOptions opts;
  opts.tolerance = tolerance;
  const IntegralResult r = integrate_endpoint_refined(
      [&](const ProfileArg& a) { return h.profile(a) * g(std::sqrt(2.0 * a.one_minus_t)); }, opts);
  return {2.0 * kPi * r.value, 2.0 * kPi * r.error_estimate, r.converged};
}

ModifiedMoments moments_log(int n) {
  check_degree(n);
  ModifiedMoments mm{SingularKernel::log(), n, std::vector<double>(n + 1, 0.0),
                     ModifiedMoments::Method::closed_form};
  mm.values[0] = kPi * (4.0 * std::log(2.0) - 2.0);
  const SingularKernel h = SingularKernel::log();
  const Integrand profile = [&h](const ProfileArg& a) { return h.profile(a); };
  std::vector<double> oracle(n + 1, 0.0);
  bool confirmed = true;
  for (int l = 1; l <= n; ++l) {
    const OracleMoment o = oracle_moment(profile, l);
    oracle[l] = o.value;
    const double candidate = -2.0 * kPi / (double(l) * (l + 1.0));
    if (!o.converged || std::abs(o.value - candidate) > 1e-10 * std::max(1.0, std::abs(candidate))) {
      confirmed = false;
    }
  }
  for (int l = 1; l <= n; ++l) {
    mm.values[l] = confirmed ? -2.0 * kPi / (double(l) * (l + 1.0)) : oracle[l];
  }
  if (!confirmed) mm.method = ModifiedMoments::Method::oracle;
  return mm;
}

ModifiedMoments moments_mixed(double nu1, double nu2, int n) {
  check_degree(n);
  const SingularKernel kernel = SingularKernel::mixed(nu1, nu2);
  ModifiedMoments mm{kernel, n, std::vector<double>(n + 1, 0.0), ModifiedMoments::Method::gauss_jacobi};
  const GaussRule rule = gauss_jacobi(n + 20, 0.5 * nu1, 0.5 * nu2);
  const double prefactor = std::pow(2.0, 0.5 * (nu1 + nu2)) * 2.0 * kPi;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes[i];
    double p0 = 1.0, p1 = t;
    mm.values[0] += rule.weights[i];
    if (n >= 1) mm.values[1] += rule.weights[i] * t;
    for (int l = 1; l < n; ++l) {
      const double p2 = ((2.0 * l + 1.0) * t * p1 - l * p0) / (l + 1.0);
      p0 = p1;
      p1 = p2;
      mm.values[l + 1] += rule.weights[i] * p2;
    }
  }
  for (double& v : mm.values) v *= prefactor;
  return mm;
}

ModifiedMoments compute_moments(const SingularKernel& kernel, int n) {
  switch (kernel.family()) {
    case SingularKernel::Family::one:
      return moments_one(n);
    case SingularKernel::Family::algebraic:
      return moments_algebraic(kernel.nu1(), n);
    case SingularKernel::Family::log:
      return moments_log(n);
    case SingularKernel::Family::mixed:
      return moments_mixed(kernel.nu1(), kernel.nu2(), n);
  }
  throw ValidationError("unknown kernel family");
}

}  // namespace sphnys
