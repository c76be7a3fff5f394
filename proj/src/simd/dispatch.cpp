#include <atomic>
#include <cstdlib>
#include <string>

#include "flsi/simd/kernels.hpp"

namespace flsi::simd {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(FLSI_BUILD_AVX2)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa initial_isa() noexcept {
  if (const char* env = std::getenv("FLSI_SIMD"); env && std::string(env) == "scalar")
    return Isa::Scalar;
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

} // namespace

std::string_view to_string(Isa isa) noexcept {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

bool isa_available(Isa isa) noexcept {
  return isa == Isa::Scalar || cpu_has_avx2();
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) noexcept {
  if (isa_available(isa)) current().store(isa, std::memory_order_relaxed);
}

void cap_values(const CapKernel& k, std::span<const double> t, std::span<const double> g,
                std::span<double> out) {
#if defined(FLSI_BUILD_AVX2)
  if (active_isa() == Isa::Avx2) {
    cap_values_avx2(k, t, g, out);
    return;
  }
#endif
  cap_values_scalar(k, t, g, out);
}

#if !defined(FLSI_BUILD_AVX2)
bool vexp_avx2(std::span<const double>, std::span<double>) { return false; }
bool vlog_avx2(std::span<const double>, std::span<double>) { return false; }
bool vlog1p_avx2(std::span<const double>, std::span<double>) { return false; }
bool vexpm1_avx2(std::span<const double>, std::span<double>) { return false; }
#endif

} // namespace flsi::simd
