// The AVX2 kernels must agree with the scalar reference (they differ only by
// FMA rounding), and dispatch must honour overrides.

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "sphnys/harmonics.hpp"
#include "sphnys/simd/kernels.hpp"
#include "sphnys/sphere.hpp"

using namespace sphnys;
using namespace sphnys::simd;

namespace {

std::vector<double> random_values(std::size_t n, double lo, double hi, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST_CASE("scalar kernel table is always available") {
  CHECK(isa_available(Isa::scalar));
  CHECK(&kernels_for(Isa::scalar) == &scalar::table);
}

#if defined(SPHNYS_HAVE_AVX2_KERNELS)

TEST_CASE("avx2 kernels match the scalar reference") {
  if (!isa_available(Isa::avx2)) {
    MESSAGE("CPU lacks AVX2/FMA; skipping equivalence checks");
    return;
  }
  const auto& ref = scalar::table;
  const auto& vec = avx2::table;

  // Odd sizes exercise the remainder loops.
  for (std::size_t m : {1u, 3u, 4u, 7u, 64u, 1001u}) {
    const PointColumns cols(uniform_random_points(m, 100 + m).points);
    const double q[3] = {0.48, -0.6, 0.64};

    std::vector<double> a(m), b(m);
    ref.dot_many(cols.x, cols.y, cols.z, q, a);
    vec.dot_many(cols.x, cols.y, cols.z, q, b);
    for (std::size_t j = 0; j < m; ++j) CHECK(std::abs(a[j] - b[j]) <= 4e-16);

    CHECK(std::abs(ref.max_dot(cols.x, cols.y, cols.z, q) - vec.max_dot(cols.x, cols.y, cols.z, q)) <= 4e-16);

    for (int n : {0, 1, 2, 9, 40}) {
      const std::vector<double> coeffs = random_values(static_cast<std::size_t>(n) + 1, -3.0, 3.0, 7 + n);
      double scale = 0.0;
      for (double c : coeffs) scale += std::abs(c);
      const std::vector<double> t = random_values(m, -1.0, 1.0, 9 + m);
      ref.legendre_series(coeffs, t, a);
      vec.legendre_series(coeffs, t, b);
      for (std::size_t j = 0; j < m; ++j) CHECK(std::abs(a[j] - b[j]) <= 1e-13 * scale);

      const std::size_t rows = static_cast<std::size_t>((n + 1) * (n + 1));
      std::vector<double> ha(rows * m), hb(rows * m);
      ref.real_harmonics(n, cols.x, cols.y, cols.z, ha.data(), m);
      vec.real_harmonics(n, cols.x, cols.y, cols.z, hb.data(), m);
      double worst = 0.0;
      for (std::size_t i = 0; i < ha.size(); ++i) worst = std::max(worst, std::abs(ha[i] - hb[i]));
      CHECK(worst <= 1e-13);
    }
  }
}

TEST_CASE("forcing the instruction set changes the active table") {
  const Isa before = active_isa();
  force_isa(Isa::scalar);
  CHECK(&kernels() == &scalar::table);
  if (isa_available(Isa::avx2)) {
    force_isa(Isa::avx2);
    CHECK(&kernels() == &avx2::table);
  }
  force_isa(before);
}

#endif

TEST_CASE("legendre series of a single coefficient is that Legendre polynomial") {
  const std::vector<double> t{-1.0, -0.3, 0.0, 0.5, 1.0};
  std::vector<double> out(t.size());
  for (int l = 0; l <= 12; ++l) {
    std::vector<double> c(static_cast<std::size_t>(l) + 1, 0.0);
    c.back() = 1.0;
    kernels().legendre_series(c, t, out);
    for (std::size_t j = 0; j < t.size(); ++j) CHECK(std::abs(out[j] - legendre_p(l, t[j])) <= 1e-14);
  }
}
