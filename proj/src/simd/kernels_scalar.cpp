#include <cmath>

#include "flsi/simd/kernels.hpp"

namespace flsi::simd {

CapKernel make_cap_kernel(const KernelShape& shape, double r, double p, double a1p, double a2p,
                          bool weighted) {
  CapKernel k;
  k.shape = shape;
  k.r = r;
  k.p = p;
  k.weighted = weighted;
  k.a1p = a1p;
  k.a2p = a2p;
  k.log_r = std::log(r);
  if (shape.bump) {
    k.bump_den = shape.R * shape.R - r * r;
    if (k.bump_den > 0.0) {
      const double x = k.bump_den / (shape.R * shape.R);
      k.phi_r = shape.amp * std::pow(x, shape.k);
      k.slope_r = shape.amp * shape.k * std::pow(x, shape.k - 1.0) * 2.0 * r / (shape.R * shape.R);
    }
  } else {
    k.r_beta = std::pow(r, shape.beta);
    k.phi_r = shape.amp * std::exp(-shape.c * k.r_beta);
    const double rb1 = shape.beta == 1.0 ? 1.0 : std::pow(r, shape.beta - 1.0);
    k.slope_r = shape.amp * shape.c * shape.beta * rb1 * std::exp(-shape.c * k.r_beta);
  }
  return k;
}

void cap_values_scalar(const CapKernel& k, std::span<const double> t, std::span<const double> g,
                       std::span<double> out) {
  const double r = k.r;
  const auto& sh = k.shape;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double ti = t[i];
    const double gi = g[i];
    const double rho2 = r * r + ti * gi;
    const double rho = std::sqrt(rho2);
    const double hq = gi / (rho + r); // (rho - r) / t
    double q = 0.0;
    if (k.phi_r > 0.0) {
      if (sh.bump) {
        if (rho2 >= sh.R * sh.R) {
          q = k.phi_r / ti;
        } else {
          const double y = ti * gi / k.bump_den;
          if (y < 1e-200)
            q = k.phi_r * sh.k * gi / k.bump_den;
          else
            q = -k.phi_r * std::expm1(sh.k * std::log1p(-y)) / ti;
        }
      } else {
        const double x = ti * hq / r; // (rho - r) / r
        if (x < 1e-200) {
          q = k.slope_r * hq;
        } else {
          const double e1 = sh.beta == 2.0 ? x * (2.0 + x) // (rho/r)^beta - 1
                                           : std::expm1(sh.beta * std::log1p(x));
          q = -k.phi_r * std::expm1(-sh.c * k.r_beta * e1) / ti;
        }
      }
    }
    double v;
    if (k.p == 2.0)
      v = q * q;
    else
      v = q > 0.0 ? std::exp(k.p * std::log(q)) : 0.0;
    if (k.weighted) {
      const double lrho = 0.5 * std::log(rho2);
      v *= std::exp(k.a1p * k.log_r + k.a2p * lrho) + std::exp(k.a2p * k.log_r + k.a1p * lrho);
    } else {
      v *= 2.0;
    }
    out[i] = v;
  }
}

} // namespace flsi::simd
