#pragma once

// Double-precision exp/log for AVX2+FMA.  Accuracy is a few ulp over the
// normal range, which is what the Gagliardo kernel needs; subnormal inputs to
// log are rescaled first.  Only included from kernels_avx2.cpp.

#include <immintrin.h>

#include <cstdint>

namespace flsi::simd::avx2 {

inline __m256d bits_to_pd(std::int64_t b) {
  return _mm256_castsi256_pd(_mm256_set1_epi64x(b));
}

// Rounded double with |n| < 2^51 to int64 lanes.
inline __m256i round_to_i64(__m256d n) {
  const __m256d magic = _mm256_set1_pd(6755399441055744.0); // 1.5 * 2^52
  return _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(n, magic)),
                          _mm256_castpd_si256(magic));
}

inline __m256d i64_to_pd(__m256i e) {
  const __m256d magic = _mm256_set1_pd(6755399441055744.0);
  return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_add_epi64(e, _mm256_castpd_si256(magic))), magic);
}

// 2^k for k in [-1022, 1023].
inline __m256d pow2i(__m256i k) {
  return _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_add_epi64(k, _mm256_set1_epi64x(1023)), 52));
}

inline __m256d exp(__m256d x) {
  const __m256d hi_lim = _mm256_set1_pd(709.782712893384);
  const __m256d lo_lim = _mm256_set1_pd(-745.2);
  const __m256d ln2_hi = _mm256_set1_pd(0.693147180369123816490);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);

  const __m256d over = _mm256_cmp_pd(x, hi_lim, _CMP_GT_OQ);
  const __m256d under = _mm256_cmp_pd(x, lo_lim, _CMP_LT_OQ);
  const __m256d nan = _mm256_cmp_pd(x, x, _CMP_UNORD_Q);
  __m256d xc = _mm256_min_pd(_mm256_max_pd(x, lo_lim), hi_lim);

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(xc, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, ln2_hi, xc);
  r = _mm256_fnmadd_pd(n, ln2_lo, r);

  // Taylor series to degree 13 on |r| <= ln2/2.
  static constexpr double inv_fact[] = {
      1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0,
      1.0 / 362880.0,     1.0 / 40320.0,     1.0 / 5040.0,      1.0 / 720.0,
      1.0 / 120.0,        1.0 / 24.0,        1.0 / 6.0,         0.5,
      1.0,                1.0};
  __m256d poly = _mm256_set1_pd(inv_fact[0]);
  for (int i = 1; i < 14; ++i) poly = _mm256_fmadd_pd(poly, r, _mm256_set1_pd(inv_fact[i]));

  const __m256i ni = round_to_i64(n);
  // Split 2^n = 2^{n/2} * 2^{n - n/2} so both factors stay normal.
  const __m256d nh = _mm256_round_pd(_mm256_mul_pd(n, _mm256_set1_pd(0.5)), _MM_FROUND_TO_ZERO | _MM_FROUND_NO_EXC);
  const __m256i k1 = round_to_i64(nh);
  const __m256i k2 = _mm256_sub_epi64(ni, k1);
  __m256d res = _mm256_mul_pd(_mm256_mul_pd(poly, pow2i(k1)), pow2i(k2));

  res = _mm256_blendv_pd(res, _mm256_set1_pd(__builtin_inf()), over);
  res = _mm256_blendv_pd(res, _mm256_setzero_pd(), under);
  res = _mm256_blendv_pd(res, x, nan);
  return res;
}

inline __m256d log(__m256d x) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d tiny = _mm256_set1_pd(2.2250738585072014e-308);
  const __m256d sub = _mm256_cmp_pd(x, tiny, _CMP_LT_OQ);
  // Rescale subnormals by 2^54.
  __m256d xs = _mm256_blendv_pd(x, _mm256_mul_pd(x, _mm256_set1_pd(18014398509481984.0)), sub);
  __m256d eadj = _mm256_blendv_pd(_mm256_setzero_pd(), _mm256_set1_pd(-54.0), sub);

  const __m256i bits = _mm256_castpd_si256(xs);
  __m256i e = _mm256_sub_epi64(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(1023));
  const __m256i mbits = _mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
                                        _mm256_set1_epi64x(0x3FF0000000000000LL));
  __m256d m = _mm256_castsi256_pd(mbits);
  const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(1.4142135623730951), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
  __m256d ed = _mm256_add_pd(i64_to_pd(e), eadj);
  ed = _mm256_add_pd(ed, _mm256_and_pd(big, one));

  // log m = 2 atanh(s), s = (m-1)/(m+1), |s| <= 0.1716.
  const __m256d s = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  const __m256d s2 = _mm256_mul_pd(s, s);
  __m256d poly = _mm256_set1_pd(1.0 / 23.0);
  for (int k = 21; k >= 1; k -= 2) poly = _mm256_fmadd_pd(poly, s2, _mm256_set1_pd(1.0 / k));
  const __m256d logm = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(2.0), s), poly);

  const __m256d ln2_hi = _mm256_set1_pd(0.693147180369123816490);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  __m256d res = _mm256_fmadd_pd(ed, ln2_lo, logm);
  res = _mm256_fmadd_pd(ed, ln2_hi, res);

  const __m256d zero = _mm256_setzero_pd();
  res = _mm256_blendv_pd(res, _mm256_set1_pd(-__builtin_inf()), _mm256_cmp_pd(x, zero, _CMP_EQ_OQ));
  res = _mm256_blendv_pd(res, _mm256_set1_pd(__builtin_nan("")), _mm256_cmp_pd(x, zero, _CMP_LT_OQ));
  res = _mm256_blendv_pd(res, x, _mm256_cmp_pd(x, _mm256_set1_pd(__builtin_inf()), _CMP_EQ_OQ));
  res = _mm256_blendv_pd(res, x, _mm256_cmp_pd(x, x, _CMP_UNORD_Q));
  return res;
}

// log(1+x) = log(u) x / (u - 1) with u = 1 + x rounded.
inline __m256d log1p(__m256d x) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d u = _mm256_add_pd(one, x);
  const __m256d um1 = _mm256_sub_pd(u, one);
  const __m256d exact = _mm256_cmp_pd(um1, _mm256_setzero_pd(), _CMP_EQ_OQ);
  const __m256d ratio = _mm256_div_pd(x, _mm256_blendv_pd(um1, one, exact));
  const __m256d res = _mm256_mul_pd(log(u), ratio);
  return _mm256_blendv_pd(res, x, exact);
}

// exp(x) - 1 = (u - 1) x / log(u) with u = exp(x).
inline __m256d expm1(__m256d x) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d u = exp(x);
  const __m256d um1 = _mm256_sub_pd(u, one);
  const __m256d lu = log(u);
  const __m256d exact = _mm256_cmp_pd(um1, _mm256_setzero_pd(), _CMP_EQ_OQ);
  const __m256d sat = _mm256_cmp_pd(um1, _mm256_set1_pd(-1.0), _CMP_EQ_OQ);
  const __m256d big = _mm256_cmp_pd(x, _mm256_set1_pd(700.0), _CMP_GT_OQ);
  const __m256d safe_lu = _mm256_blendv_pd(lu, one, _mm256_or_pd(exact, sat));
  __m256d res = _mm256_mul_pd(um1, _mm256_div_pd(x, safe_lu));
  res = _mm256_blendv_pd(res, x, exact);
  res = _mm256_blendv_pd(res, _mm256_set1_pd(-1.0), sat);
  res = _mm256_blendv_pd(res, um1, big);
  return res;
}

} // namespace flsi::simd::avx2
