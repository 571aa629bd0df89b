// Built with -mavx2 -mfma; only reached through the dispatch table after a
// CPUID check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "harmonic_tables.hpp"
#include "sphnys/simd/kernels.hpp"

namespace sphnys::simd::avx2 {
namespace {

constexpr std::size_t kLanes = 4;

void dot_many(std::span<const double> x, std::span<const double> y, std::span<const double> z,
              const double q[3], std::span<double> out) {
  const std::size_t m = x.size();
  const __m256d qx = _mm256_set1_pd(q[0]);
  const __m256d qy = _mm256_set1_pd(q[1]);
  const __m256d qz = _mm256_set1_pd(q[2]);
  std::size_t j = 0;
  for (; j + kLanes <= m; j += kLanes) {
    __m256d acc = _mm256_mul_pd(qx, _mm256_loadu_pd(x.data() + j));
    acc = _mm256_fmadd_pd(qy, _mm256_loadu_pd(y.data() + j), acc);
    acc = _mm256_fmadd_pd(qz, _mm256_loadu_pd(z.data() + j), acc);
    _mm256_storeu_pd(out.data() + j, acc);
  }
  for (; j < m; ++j) {
    out[j] = std::fma(q[2], z[j], std::fma(q[1], y[j], q[0] * x[j]));
  }
}

double max_dot(std::span<const double> x, std::span<const double> y, std::span<const double> z,
               const double q[3]) {
  const std::size_t m = x.size();
  const __m256d qx = _mm256_set1_pd(q[0]);
  const __m256d qy = _mm256_set1_pd(q[1]);
  const __m256d qz = _mm256_set1_pd(q[2]);
  __m256d best = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  std::size_t j = 0;
  for (; j + kLanes <= m; j += kLanes) {
    __m256d acc = _mm256_mul_pd(qx, _mm256_loadu_pd(x.data() + j));
    acc = _mm256_fmadd_pd(qy, _mm256_loadu_pd(y.data() + j), acc);
    acc = _mm256_fmadd_pd(qz, _mm256_loadu_pd(z.data() + j), acc);
    best = _mm256_max_pd(best, acc);
  }
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, best);
  double result = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; j < m; ++j) {
    result = std::max(result, std::fma(q[2], z[j], std::fma(q[1], y[j], q[0] * x[j])));
  }
  return result;
}

void legendre_series(std::span<const double> coeffs, std::span<const double> t,
                     std::span<double> out) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  const std::size_t m = t.size();
  if (n < 0) {
    for (std::size_t j = 0; j < m; ++j) out[j] = 0.0;
    return;
  }
  std::size_t j = 0;
  for (; j + kLanes <= m; j += kLanes) {
    const __m256d tv = _mm256_loadu_pd(t.data() + j);
    __m256d b1 = _mm256_setzero_pd();
    __m256d b2 = _mm256_setzero_pd();
    for (int k = n; k >= 0; --k) {
      const __m256d alpha = _mm256_set1_pd((2.0 * k + 1.0) / (k + 1.0));
      const __m256d beta = _mm256_set1_pd((k + 1.0) / (k + 2.0));
      __m256d b0 = _mm256_fnmadd_pd(beta, b2, _mm256_set1_pd(coeffs[k]));
      b0 = _mm256_fmadd_pd(_mm256_mul_pd(alpha, tv), b1, b0);
      b2 = b1;
      b1 = b0;
    }
    _mm256_storeu_pd(out.data() + j, b1);
  }
  for (; j < m; ++j) {
    double b1 = 0.0, b2 = 0.0;
    for (int k = n; k >= 0; --k) {
      const double alpha = (2.0 * k + 1.0) / (k + 1.0);
      const double beta = (k + 1.0) / (k + 2.0);
      const double b0 = std::fma(alpha * t[j], b1, std::fma(-beta, b2, coeffs[k]));
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
  const std::size_t count = x.size();
  const __m256d sqrt2 = _mm256_set1_pd(std::numbers::sqrt2);
  std::size_t j = 0;
  for (; j + kLanes <= count; j += kLanes) {
    const __m256d xv = _mm256_loadu_pd(x.data() + j);
    const __m256d yv = _mm256_loadu_pd(y.data() + j);
    const __m256d zv = _mm256_loadu_pd(z.data() + j);
    __m256d re = _mm256_set1_pd(1.0);
    __m256d im = _mm256_setzero_pd();
    for (int m = 0; m <= n; ++m) {
      if (m > 0) {
        const __m256d r = _mm256_fmsub_pd(re, xv, _mm256_mul_pd(im, yv));
        im = _mm256_fmadd_pd(re, yv, _mm256_mul_pd(im, xv));
        re = r;
      }
      const __m256d cs = m == 0 ? _mm256_set1_pd(1.0) : _mm256_mul_pd(sqrt2, re);
      const __m256d sn = _mm256_mul_pd(sqrt2, im);
      __m256d q2 = _mm256_setzero_pd();
      __m256d q1 = _mm256_set1_pd(rec.diag[m]);
      for (int l = m; l <= n; ++l) {
        __m256d q;
        if (l == m) {
          q = q1;
        } else if (l == m + 1) {
          q = _mm256_mul_pd(_mm256_set1_pd(std::sqrt(2.0 * m + 3.0)), _mm256_mul_pd(zv, q1));
        } else {
          const std::size_t i = HarmonicRecurrence::tri(l, m);
          const __m256d inner = _mm256_fnmadd_pd(_mm256_set1_pd(rec.b[i]), q2, _mm256_mul_pd(zv, q1));
          q = _mm256_mul_pd(_mm256_set1_pd(rec.a[i]), inner);
        }
        if (l > m) {
          q2 = q1;
          q1 = q;
        }
        _mm256_storeu_pd(out + HarmonicRecurrence::row_cos(l, m) * ld + j, _mm256_mul_pd(q, cs));
        if (m > 0) {
          _mm256_storeu_pd(out + HarmonicRecurrence::row_sin(l, m) * ld + j, _mm256_mul_pd(q, sn));
        }
      }
    }
  }
  if (j < count) {
    scalar::table.real_harmonics(n, x.subspan(j), y.subspan(j), z.subspan(j), out + j, ld);
  }
}

}  // namespace

const KernelTable table{dot_many, max_dot, legendre_series, real_harmonics};

}  // namespace sphnys::simd::avx2
