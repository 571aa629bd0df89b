#pragma once

// Recurrence coefficients shared by the scalar and AVX2 harmonic kernels.
//
// With rho = sqrt(1 - z^2) the fully normalized associated Legendre function
// factors as rho^m * Q[l][m](z), and rho^m (cos m phi, sin m phi) is
// (Re, Im) of (x + i y)^m, so every harmonic is a polynomial in x, y, z and
// no angle or square root is ever taken.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace sphnys::simd::detail {

struct HarmonicRecurrence {
  int n = 0;
  std::vector<double> diag;  // Q[m][m], constant in z
  std::vector<double> a, b;  // indexed by tri(l, m) for l >= m + 2

  static std::size_t tri(int l, int m) { return static_cast<std::size_t>(l) * (l + 1) / 2 + m; }

  explicit HarmonicRecurrence(int degree) : n(degree) {
    diag.resize(n + 1);
    diag[0] = 1.0 / std::sqrt(4.0 * std::numbers::pi);
    for (int m = 1; m <= n; ++m) {
      diag[m] = diag[m - 1] * std::sqrt((2.0 * m + 1.0) / (2.0 * m));
    }
    a.assign(tri(n, n) + 1, 0.0);
    b.assign(tri(n, n) + 1, 0.0);
    for (int m = 0; m <= n; ++m) {
      for (int l = m + 2; l <= n; ++l) {
        const double ll = l, mm = m;
        a[tri(l, m)] = std::sqrt((4.0 * ll * ll - 1.0) / (ll * ll - mm * mm));
        b[tri(l, m)] = std::sqrt(((ll - 1.0) * (ll - 1.0) - mm * mm) /
                                 (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
      }
    }
  }

  // Flat row of the (l, m) cosine / zonal / sine component.
  static std::size_t row_cos(int l, int m) { return static_cast<std::size_t>(l * l + l + m); }
  static std::size_t row_sin(int l, int m) { return static_cast<std::size_t>(l * l + l - m); }
};

}  // namespace sphnys::simd::detail
