#include <immintrin.h>

#include <cmath>

#include "flsi/simd/kernels.hpp"
#include "vecmath_avx2.hpp"

namespace flsi::simd {

namespace {

template <class F>
bool apply(std::span<const double> x, std::span<double> out, F f) {
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) _mm256_storeu_pd(out.data() + i, f(_mm256_loadu_pd(x.data() + i)));
  if (i < x.size()) {
    alignas(32) double buf[4] = {1.0, 1.0, 1.0, 1.0};
    for (std::size_t j = i; j < x.size(); ++j) buf[j - i] = x[j];
    _mm256_store_pd(buf, f(_mm256_load_pd(buf)));
    for (std::size_t j = i; j < x.size(); ++j) out[j] = buf[j - i];
  }
  return true;
}

inline __m256d cap4(const CapKernel& k, __m256d t, __m256d g) {
  const auto& sh = k.shape;
  const __m256d zero = _mm256_setzero_pd();
  const __m256d r = _mm256_set1_pd(k.r);
  const __m256d phi = _mm256_set1_pd(k.phi_r);
  const __m256d tg = _mm256_mul_pd(t, g);
  const __m256d rho2 = _mm256_fmadd_pd(r, r, tg);
  const __m256d rho = _mm256_sqrt_pd(rho2);
  const __m256d hq = _mm256_div_pd(g, _mm256_add_pd(rho, r));

  __m256d q;
  if (sh.bump) {
    const __m256d den = _mm256_set1_pd(k.bump_den);
    const __m256d y = _mm256_div_pd(tg, den);
    const __m256d outside = _mm256_cmp_pd(rho2, _mm256_set1_pd(sh.R * sh.R), _CMP_GE_OQ);
    const __m256d small = _mm256_cmp_pd(y, _mm256_set1_pd(1e-200), _CMP_LT_OQ);
    const __m256d ys = _mm256_blendv_pd(y, _mm256_set1_pd(0.5), _mm256_or_pd(outside, small));
    const __m256d e = avx2::expm1(_mm256_mul_pd(_mm256_set1_pd(sh.k), avx2::log1p(_mm256_sub_pd(zero, ys))));
    const __m256d q_in = _mm256_div_pd(_mm256_mul_pd(_mm256_sub_pd(zero, phi), e), t);
    const __m256d q_lim = _mm256_div_pd(_mm256_mul_pd(_mm256_set1_pd(k.phi_r * sh.k), g), den);
    q = _mm256_blendv_pd(q_in, q_lim, small);
    q = _mm256_blendv_pd(q, _mm256_div_pd(phi, t), outside);
  } else {
    const __m256d x = _mm256_div_pd(_mm256_mul_pd(t, hq), r);
    const __m256d small = _mm256_cmp_pd(x, _mm256_set1_pd(1e-200), _CMP_LT_OQ);
    const __m256d xs = _mm256_blendv_pd(x, _mm256_set1_pd(1.0), small);
    const __m256d e1 = sh.beta == 2.0
                           ? _mm256_mul_pd(xs, _mm256_add_pd(_mm256_set1_pd(2.0), xs))
                           : avx2::expm1(_mm256_mul_pd(_mm256_set1_pd(sh.beta), avx2::log1p(xs)));
    const __m256d e2 = avx2::expm1(_mm256_mul_pd(_mm256_set1_pd(-sh.c * k.r_beta), e1));
    const __m256d q_gen = _mm256_div_pd(_mm256_mul_pd(_mm256_sub_pd(zero, phi), e2), t);
    const __m256d q_lim = _mm256_mul_pd(_mm256_set1_pd(k.slope_r), hq);
    q = _mm256_blendv_pd(q_gen, q_lim, small);
  }

  __m256d v;
  if (k.p == 2.0) {
    v = _mm256_mul_pd(q, q);
  } else {
    const __m256d pos = _mm256_cmp_pd(q, zero, _CMP_GT_OQ);
    const __m256d qs = _mm256_blendv_pd(_mm256_set1_pd(1.0), q, pos);
    v = avx2::exp(_mm256_mul_pd(_mm256_set1_pd(k.p), avx2::log(qs)));
    v = _mm256_blendv_pd(zero, v, pos);
  }
  if (k.weighted) {
    const __m256d lr = _mm256_set1_pd(k.log_r);
    const __m256d lrho = _mm256_mul_pd(_mm256_set1_pd(0.5), avx2::log(rho2));
    const __m256d a1 = _mm256_set1_pd(k.a1p);
    const __m256d a2 = _mm256_set1_pd(k.a2p);
    const __m256d w = _mm256_add_pd(avx2::exp(_mm256_fmadd_pd(a1, lr, _mm256_mul_pd(a2, lrho))),
                                    avx2::exp(_mm256_fmadd_pd(a2, lr, _mm256_mul_pd(a1, lrho))));
    v = _mm256_mul_pd(v, w);
  } else {
    v = _mm256_add_pd(v, v);
  }
  return v;
}

} // namespace

void cap_values_avx2(const CapKernel& k, std::span<const double> t, std::span<const double> g,
                     std::span<double> out) {
  const std::size_t n = t.size();
  if (!(k.phi_r > 0.0)) {
    for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
    return;
  }
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out.data() + i, cap4(k, _mm256_loadu_pd(t.data() + i), _mm256_loadu_pd(g.data() + i)));
  }
  if (i < n) {
    alignas(32) double tb[4] = {1.0, 1.0, 1.0, 1.0};
    alignas(32) double gb[4] = {1.0, 1.0, 1.0, 1.0};
    alignas(32) double ob[4];
    for (std::size_t j = i; j < n; ++j) {
      tb[j - i] = t[j];
      gb[j - i] = g[j];
    }
    _mm256_store_pd(ob, cap4(k, _mm256_load_pd(tb), _mm256_load_pd(gb)));
    for (std::size_t j = i; j < n; ++j) out[j] = ob[j - i];
  }
}

bool vexp_avx2(std::span<const double> x, std::span<double> out) {
  return apply(x, out, [](__m256d v) { return avx2::exp(v); });
}
bool vlog_avx2(std::span<const double> x, std::span<double> out) {
  return apply(x, out, [](__m256d v) { return avx2::log(v); });
}
bool vlog1p_avx2(std::span<const double> x, std::span<double> out) {
  return apply(x, out, [](__m256d v) { return avx2::log1p(v); });
}
bool vexpm1_avx2(std::span<const double> x, std::span<double> out) {
  return apply(x, out, [](__m256d v) { return avx2::expm1(v); });
}

} // namespace flsi::simd
