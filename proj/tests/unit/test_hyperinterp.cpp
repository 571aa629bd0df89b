#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sphnys/error.hpp"
#include "sphnys/hyperinterp.hpp"
#include "sphnys/mz_analysis.hpp"
#include "unit/test_helpers.hpp"

using namespace sphnys;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> sample(const QuadratureRule& rule, auto&& g) {
  std::vector<double> v;
  v.reserve(rule.size());
  for (const auto& p : rule.points) v.push_back(g(p));
  return v;
}

}  // namespace

TEST_CASE("constant function") {
  const QuadratureRule rule = sphnys::testing::design(20);
  const std::vector<double> ones(rule.size(), 1.0);
  const HyperCoefficients c = hyper_coefficients(rule, 8, ones);
  CHECK(c.coeffs.size() == 81);
  CHECK(c.coeffs[0] == Approx(std::sqrt(4 * kPi)).epsilon(1e-12));
  CHECK(c.coeffs.tail(80).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(hyper_l2_norm(c) == Approx(3.5449077).epsilon(1e-7));
  for (const auto& t : uniform_random_points(20, 3).points) CHECK(hyper_evaluate(c, t) == Approx(1.0).epsilon(1e-10));
}

TEST_CASE("a single harmonic maps to a unit vector") {
  const QuadratureRule rule = sphnys::testing::design(10);
  const HarmonicIndex target(2, 1);
  const HyperCoefficients c =
      hyper_coefficients(rule, 5, sample(rule, [&](const SpherePoint& p) { return eval_harmonic(target, p); }));
  Eigen::VectorXd e = Eigen::VectorXd::Zero(36);
  e[target.flat()] = 1.0;
  CHECK((c.coeffs - e).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("coefficients are linear in the samples") {
  const QuadratureRule rule = equal_area_points(300);
  const Hyperinterpolator hi(rule, 7);
  const auto f = sample(rule, [](const SpherePoint& p) { return std::exp(p.x()) * p.z(); });
  const auto g = sample(rule, [](const SpherePoint& p) { return std::sin(3 * p.y()); });
  std::vector<double> h(rule.size());
  for (std::size_t j = 0; j < h.size(); ++j) h[j] = 2.5 * f[j] - 0.75 * g[j];
  const Eigen::VectorXd combined = 2.5 * hi.coefficients(f).coeffs - 0.75 * hi.coefficients(g).coeffs;
  CHECK((hi.coefficients(h).coeffs - combined).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(hi.coefficients(f).rule_label == rule.label);
}

TEST_CASE("sample length mismatch is rejected") {
  const Hyperinterpolator hi(equal_area_points(50), 3);
  const std::vector<double> short_samples(49, 1.0);
  CHECK_THROWS_AS(hi.coefficients(short_samples), ValidationError);
}

TEST_CASE("polynomials are reproduced under an exact rule") {
  const QuadratureRule rule = sphnys::testing::design(20);
  const int n = 10;
  auto chi = [](const SpherePoint& p) {
    return 0.3 + p.x() * p.y() - 2 * std::pow(p.z(), 5) + std::pow(p.x(), 3) * std::pow(p.y(), 4) * p.z() * p.z() * p.x();
  };
  const HyperCoefficients c = hyper_coefficients(rule, n, sample(rule, chi));
  for (const auto& t : uniform_random_points(100, 17).points) CHECK(hyper_evaluate(c, t) == Approx(chi(t)).epsilon(1e-9).scale(1.0));
}

TEST_CASE("hyperinterpolation is a projection under exactness") {
  const QuadratureRule rule = sphnys::testing::design(20);
  const int n = 10;
  const Hyperinterpolator hi(rule, n);
  const auto g = sample(rule, [](const SpherePoint& p) { return std::cos(4 * p.x() + p.z()); });
  const HyperCoefficients once = hi.coefficients(g);
  const HyperCoefficients twice =
      hi.coefficients(sample(rule, [&](const SpherePoint& p) { return hyper_evaluate(once, p); }));
  CHECK((once.coeffs - twice.coeffs).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("inner product matrix equals the Gram matrix") {
  for (const QuadratureRule& rule : {equal_area_points(200), random_rule(90, 2), sphnys::testing::design(10)}) {
    const Hyperinterpolator hi(rule, 6);
    CHECK((hi.inner_product_matrix() - gram_matrix(rule, 6)).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("stability: norm bounded by the discrete maximum") {
  // |L_n g|^2 <= (1 + eta) * sum_j w_j g(x_j)^2 <= (1 + eta) * 4 pi * max |g(x_j)|^2
  for (const QuadratureRule& rule : {equal_area_points(400), random_rule(2000, 5), sphnys::testing::design(20)}) {
    const int n = 8;
    const double eta = mz_eta(rule, n);
    for (auto g : {+[](const SpherePoint& p) { return std::abs(p.x()) + p.y(); },
                   +[](const SpherePoint& p) { return p.z() > 0.2 ? 1.0 : -1.0; }}) {
      const auto v = sample(rule, g);
      double gmax = 0.0;
      for (double x : v) gmax = std::max(gmax, std::abs(x));
      const double norm = hyper_l2_norm(hyper_coefficients(rule, n, v));
      CHECK(norm <= std::sqrt((1 + eta) * 4 * kPi) * gmax * (1 + 1e-12));
    }
  }
}

TEST_CASE("evaluation and norm of given coefficients") {
  HyperCoefficients c{3, Eigen::VectorXd::Zero(16), "manual"};
  CHECK(hyper_l2_norm(c) == 0.0);
  c.coeffs[0] = std::sqrt(4 * kPi);
  CHECK(hyper_evaluate(c, SpherePoint(0.1, 0.2, 0.3)) == Approx(1.0).epsilon(1e-15));
}
