#include "kcl/simd/kernels.hpp"

#if defined(KCL_HAVE_AVX2)

#include <immintrin.h>

namespace kcl::simd::detail {
namespace {

void accumulate_weighted_product_avx2(std::size_t n, const double* w, const double* a_re,
                                      const double* a_im, const double* b_re,
                                      const double* b_im, double* out_re, double* out_im) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ar = _mm256_loadu_pd(a_re + i);
    const __m256d ai = _mm256_loadu_pd(a_im + i);
    const __m256d br = _mm256_loadu_pd(b_re + i);
    const __m256d bi = _mm256_loadu_pd(b_im + i);
    const __m256d wv = _mm256_loadu_pd(w + i);
    const __m256d p_re = _mm256_add_pd(_mm256_mul_pd(ar, br), _mm256_mul_pd(ai, bi));
    const __m256d p_im = _mm256_sub_pd(_mm256_mul_pd(ai, br), _mm256_mul_pd(ar, bi));
    _mm256_storeu_pd(out_re + i, _mm256_add_pd(_mm256_loadu_pd(out_re + i), _mm256_mul_pd(wv, p_re)));
    _mm256_storeu_pd(out_im + i, _mm256_add_pd(_mm256_loadu_pd(out_im + i), _mm256_mul_pd(wv, p_im)));
  }
  for (; i < n; ++i) {
    const double p_re = a_re[i] * b_re[i] + a_im[i] * b_im[i];
    const double p_im = a_im[i] * b_re[i] - a_re[i] * b_im[i];
    out_re[i] = out_re[i] + w[i] * p_re;
    out_im[i] = out_im[i] + w[i] * p_im;
  }
}

double dot_avx2(std::size_t n, const double* a, const double* b) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4)));
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void resolvent_accumulate_avx2(std::size_t n, const double* x, double lambda_re,
                               double lambda_im, double c_re, double c_im, double* out_re,
                               double* out_im) {
  const double d_im = -lambda_im;
  const __m256d lr = _mm256_set1_pd(lambda_re);
  const __m256d di2 = _mm256_set1_pd(d_im * d_im);
  const __m256d cr = _mm256_set1_pd(c_re);
  const __m256d ci = _mm256_set1_pd(c_im);
  const __m256d cr_di = _mm256_set1_pd(c_re * d_im);
  const __m256d ci_di = _mm256_set1_pd(c_im * d_im);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d_re = _mm256_sub_pd(_mm256_loadu_pd(x + i), lr);
    const __m256d den = _mm256_add_pd(_mm256_mul_pd(d_re, d_re), di2);
    const __m256d num_re = _mm256_add_pd(_mm256_mul_pd(cr, d_re), ci_di);
    const __m256d num_im = _mm256_sub_pd(_mm256_mul_pd(ci, d_re), cr_di);
    _mm256_storeu_pd(out_re + i, _mm256_add_pd(_mm256_loadu_pd(out_re + i), _mm256_div_pd(num_re, den)));
    _mm256_storeu_pd(out_im + i, _mm256_add_pd(_mm256_loadu_pd(out_im + i), _mm256_div_pd(num_im, den)));
  }
  for (; i < n; ++i) {
    const double d_re = x[i] - lambda_re;
    const double den = d_re * d_re + d_im * d_im;
    const double num_re = c_re * d_re + c_im * d_im;
    const double num_im = c_im * d_re - c_re * d_im;
    out_re[i] = out_re[i] + num_re / den;
    out_im[i] = out_im[i] + num_im / den;
  }
}

}  // namespace

const KernelTable kAvx2Table{Isa::Avx2, &accumulate_weighted_product_avx2, &dot_avx2,
                             &resolvent_accumulate_avx2};

}  // namespace kcl::simd::detail

#endif  // KCL_HAVE_AVX2
