#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "sphnys/simd/kernels.hpp"

namespace sphnys::simd {
namespace {

bool cpu_has_avx2() {
#if defined(SPHNYS_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() {
  if (const char* env = std::getenv("SPHNYS_SIMD")) {
    const std::string_view v(env);
    if (v == "scalar") return Isa::scalar;
    if (v == "avx2" && cpu_has_avx2()) return Isa::avx2;
  }
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool isa_available(Isa isa) { return isa == Isa::scalar || cpu_has_avx2(); }

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (!isa_available(isa)) throw std::invalid_argument("instruction set not available on this CPU");
  current().store(isa, std::memory_order_relaxed);
}

const KernelTable& kernels_for(Isa isa) {
#if defined(SPHNYS_HAVE_AVX2_KERNELS)
  if (isa == Isa::avx2) return avx2::table;
#endif
  (void)isa;
  return scalar::table;
}

const KernelTable& kernels() { return kernels_for(active_isa()); }

}  // namespace sphnys::simd
