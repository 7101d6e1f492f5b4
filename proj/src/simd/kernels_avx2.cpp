#include <immintrin.h>

#include "kernels_impl.hpp"

namespace hzn::simd::detail {

namespace {

double hsum(__m256d x) {
  const __m128d lo = _mm256_castpd256_pd128(x);
  const __m128d hi = _mm256_extractf128_pd(x, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

cplx weighted_sum_avx2(std::span<const double> w, std::span<const cplx> f) {
  const std::size_t n = w.size();
  const double* wp = w.data();
  const auto* fp = reinterpret_cast<const double*>(f.data());
  // Lanes hold (re, im, re, im) of two consecutive points.
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m128d w01 = _mm_loadu_pd(wp + k);
    const __m128d w23 = _mm_loadu_pd(wp + k + 2);
    const __m256d wa = _mm256_set_m128d(_mm_unpackhi_pd(w01, w01), _mm_unpacklo_pd(w01, w01));
    const __m256d wb = _mm256_set_m128d(_mm_unpackhi_pd(w23, w23), _mm_unpacklo_pd(w23, w23));
    acc0 = _mm256_fmadd_pd(wa, _mm256_loadu_pd(fp + 2 * k), acc0);
    acc1 = _mm256_fmadd_pd(wb, _mm256_loadu_pd(fp + 2 * k + 4), acc1);
  }
  const __m256d acc = _mm256_add_pd(acc0, acc1);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double re = lanes[0] + lanes[2];
  double im = lanes[1] + lanes[3];
  for (; k < n; ++k) {
    re += wp[k] * fp[2 * k];
    im += wp[k] * fp[2 * k + 1];
  }
  return {re, im};
}

cplx geometric_rational_sum_avx2(cplx v, cplx a, std::size_t count) {
  if (count < 8) return geometric_rational_sum_scalar(v, a, count);
  // Four lanes carry k, k+1, k+2, k+3; powers advance by v^4 per step.
  alignas(32) double pre[4];
  alignas(32) double pim[4];
  cplx p = 1.0;
  for (int j = 0; j < 4; ++j) {
    pre[j] = p.real();
    pim[j] = p.imag();
    p *= v;
  }
  const cplx v4 = p;
  __m256d p_re = _mm256_load_pd(pre);
  __m256d p_im = _mm256_load_pd(pim);
  const __m256d s_re = _mm256_set1_pd(v4.real());
  const __m256d s_im = _mm256_set1_pd(v4.imag());
  __m256d d_re = _mm256_setr_pd(a.real(), a.real() + 1.0, a.real() + 2.0, a.real() + 3.0);
  const __m256d d_im = _mm256_set1_pd(a.imag());
  const __m256d d_im2 = _mm256_mul_pd(d_im, d_im);
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d sum_re = _mm256_setzero_pd();
  __m256d sum_im = _mm256_setzero_pd();

  std::size_t k = 0;
  for (; k + 4 <= count; k += 4) {
    const __m256d inv = _mm256_div_pd(one, _mm256_fmadd_pd(d_re, d_re, d_im2));
    // p * conj(d)
    const __m256d t_re = _mm256_fmadd_pd(p_re, d_re, _mm256_mul_pd(p_im, d_im));
    const __m256d t_im = _mm256_fmsub_pd(p_im, d_re, _mm256_mul_pd(p_re, d_im));
    sum_re = _mm256_fmadd_pd(t_re, inv, sum_re);
    sum_im = _mm256_fmadd_pd(t_im, inv, sum_im);
    const __m256d n_re = _mm256_fmsub_pd(p_re, s_re, _mm256_mul_pd(p_im, s_im));
    const __m256d n_im = _mm256_fmadd_pd(p_re, s_im, _mm256_mul_pd(p_im, s_re));
    p_re = n_re;
    p_im = n_im;
    d_re = _mm256_add_pd(d_re, four);
  }
  cplx sum(hsum(sum_re), hsum(sum_im));
  if (k < count) {
    _mm256_store_pd(pre, p_re);
    _mm256_store_pd(pim, p_im);
    sum += geometric_rational_sum_scalar(v, a + static_cast<double>(k), count - k) * cplx(pre[0], pim[0]);
  }
  return sum;
}

}  // namespace hzn::simd::detail
