#pragma once

// Batched inner-loop kernel of the Gagliardo quadrature.
//
// For a fixed outer radius r and a batch of (t, g) nodes, where t = |x - y| and
// g = t + 2 r cos(theta) >= 0 (so |y|^2 = r^2 + t g >= r^2), the kernel returns
//
//     out[i] = W(r, rho_i) * ((phi(r) - phi(rho_i)) / t_i)^p,
//
// with rho_i = |y| and W the symmetrised weight |x|^{a1}|y|^{a2} + |x|^{a2}|y|^{a1}
// (W = 2 when unweighted).  The difference is evaluated through log1p/expm1 so
// it keeps full relative accuracy as t -> 0, where the t^{-1} factor would
// otherwise amplify cancellation.
//
// A scalar reference and an AVX2+FMA variant exist; the variant is picked at
// runtime from CPUID and can be forced for testing.

#include <span>
#include <string_view>

namespace flsi::simd {

struct KernelShape {
  bool bump = false;
  double amp = 1.0;
  double c = 1.0;    // exp form: amp * exp(-c r^beta)
  double beta = 2.0;
  double R = 1.0;    // bump form: amp * (1 - r^2/R^2)_+^k
  double k = 2.0;
};

/// Quantities that depend on r only, computed once per outer node.
struct CapKernel {
  KernelShape shape;
  double r = 0.0;
  double p = 2.0;
  bool weighted = false;
  double a1p = 0.0;
  double a2p = 0.0;

  double phi_r = 0.0;   // phi(r)
  double slope_r = 0.0; // |phi'(r)|
  double r_beta = 0.0;  // r^beta (exp form)
  double log_r = 0.0;
  double bump_den = 0.0; // R^2 - r^2 (bump form)
};

CapKernel make_cap_kernel(const KernelShape& shape, double r, double p, double a1p = 0.0,
                          double a2p = 0.0, bool weighted = false);

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;
bool isa_available(Isa isa) noexcept;
/// Variant in use; defaults to the best available unless FLSI_SIMD=scalar is set.
Isa active_isa() noexcept;
/// Overrides the runtime choice; ignored when the ISA is unavailable.
void force_isa(Isa isa) noexcept;

/// Dispatching entry point.  t, g and out must have equal length.
void cap_values(const CapKernel& k, std::span<const double> t, std::span<const double> g,
                std::span<double> out);

void cap_values_scalar(const CapKernel& k, std::span<const double> t, std::span<const double> g,
                       std::span<double> out);
#if defined(FLSI_BUILD_AVX2)
void cap_values_avx2(const CapKernel& k, std::span<const double> t, std::span<const double> g,
                     std::span<double> out);
#endif

/// Elementwise vector math used by the AVX2 kernel (exposed for accuracy tests).
/// Return false when the AVX2 build is not present.
bool vexp_avx2(std::span<const double> x, std::span<double> out);
bool vlog_avx2(std::span<const double> x, std::span<double> out);
bool vlog1p_avx2(std::span<const double> x, std::span<double> out);
bool vexpm1_avx2(std::span<const double> x, std::span<double> out);

} // namespace flsi::simd
