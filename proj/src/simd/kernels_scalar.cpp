#include <cmath>
#include <limits>
#include <numbers>

#include "harmonic_tables.hpp"
#include "sphnys/simd/kernels.hpp"

namespace sphnys::simd::scalar {
namespace {

void dot_many(std::span<const double> x, std::span<const double> y, std::span<const double> z,
              const double q[3], std::span<double> out) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    out[j] = q[0] * x[j] + q[1] * y[j] + q[2] * z[j];
  }
}

double max_dot(std::span<const double> x, std::span<const double> y, std::span<const double> z,
               const double q[3]) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double d = q[0] * x[j] + q[1] * y[j] + q[2] * z[j];
    if (d > best) best = d;
  }
  return best;
}

void legendre_series(std::span<const double> coeffs, std::span<const double> t,
                     std::span<double> out) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (n < 0) {
      out[j] = 0.0;
      continue;
    }
    // b_k = c_k + (2k+1)/(k+1) t b_{k+1} - (k+1)/(k+2) b_{k+2}
    double b1 = 0.0, b2 = 0.0;
    for (int k = n; k >= 0; --k) {
      const double alpha = (2.0 * k + 1.0) / (k + 1.0);
      const double beta = (k + 1.0) / (k + 2.0);
      const double b0 = coeffs[k] + alpha * t[j] * b1 - beta * b2;
      b2 = b1;
      b1 = b0;
    }
    out[j] = b1;
  }
}

void real_harmonics(int n, std::span<const double> x, std::span<const double> y,
                    std::span<const double> z, double* out, std::size_t ld) {
  using detail::HarmonicRecurrence;
  const HarmonicRecurrence rec(n);
  for (std::size_t j = 0; j < x.size(); ++j) {
    double re = 1.0, im = 0.0;  // (x + iy)^m
    for (int m = 0; m <= n; ++m) {
      if (m > 0) {
        const double r = re * x[j] - im * y[j];
        im = re * y[j] + im * x[j];
        re = r;
      }
      const double cs = m == 0 ? 1.0 : std::numbers::sqrt2 * re;
      const double sn = std::numbers::sqrt2 * im;
      double q2 = 0.0;
      double q1 = rec.diag[m];
      for (int l = m; l <= n; ++l) {
        double q;
        if (l == m) {
          q = q1;
        } else if (l == m + 1) {
          q = std::sqrt(2.0 * m + 3.0) * z[j] * q1;
        } else {
          const std::size_t i = HarmonicRecurrence::tri(l, m);
          q = rec.a[i] * (z[j] * q1 - rec.b[i] * q2);
        }
        if (l > m) {
          q2 = q1;
          q1 = q;
        }
        out[HarmonicRecurrence::row_cos(l, m) * ld + j] = q * cs;
        if (m > 0) out[HarmonicRecurrence::row_sin(l, m) * ld + j] = q * sn;
      }
    }
  }
}

}  // namespace

const KernelTable table{dot_many, max_dot, legendre_series, real_harmonics};

}  // namespace sphnys::simd::scalar
