#pragma once

// Data-parallel inner loops shared by the harmonics, quadrature analysis and
// solver modules. Every kernel has a portable scalar reference and, on x86-64,
// an AVX2/FMA variant. The variant is picked once at startup from CPUID and
// can be overridden with SPHNYS_SIMD=scalar|avx2 or force_isa().

#include <cstddef>
#include <span>

namespace sphnys::simd {

enum class Isa { scalar, avx2 };

Isa active_isa();
/// Overrides CPU detection. Requesting avx2 on a machine without it throws.
void force_isa(Isa isa);
bool isa_available(Isa isa);
const char* isa_name(Isa isa);

/// Table of the kernels provided by one instruction-set variant.
struct KernelTable {
  /// out[j] = q . (x[j], y[j], z[j])
  void (*dot_many)(std::span<const double> x, std::span<const double> y,
                   std::span<const double> z, const double q[3], std::span<double> out);
  /// max_j q . (x[j], y[j], z[j]); -inf for empty input
  double (*max_dot)(std::span<const double> x, std::span<const double> y,
                    std::span<const double> z, const double q[3]);
  /// out[j] = sum_l coeffs[l] P_l(t[j]) by Clenshaw summation
  void (*legendre_series)(std::span<const double> coeffs, std::span<const double> t,
                          std::span<double> out);
  /// Real orthonormal spherical harmonics up to degree n at every point.
  /// Row i of the output (flat harmonic index) starts at out + i * ld and
  /// holds the values at the points in input order; ld >= number of points.
  void (*real_harmonics)(int n, std::span<const double> x, std::span<const double> y,
                         std::span<const double> z, double* out, std::size_t ld);
};

const KernelTable& kernels();
const KernelTable& kernels_for(Isa isa);

namespace scalar {
extern const KernelTable table;
}
#if defined(SPHNYS_HAVE_AVX2_KERNELS)
namespace avx2 {
extern const KernelTable table;
}
#endif

}  // namespace sphnys::simd
