#include "kcl/simd/kernels.hpp"

namespace kcl::simd::detail {
namespace {

void accumulate_weighted_product_scalar(std::size_t n, const double* w, const double* a_re,
                                        const double* a_im, const double* b_re,
                                        const double* b_im, double* out_re, double* out_im) {
  for (std::size_t i = 0; i < n; ++i) {
    const double p_re = a_re[i] * b_re[i] + a_im[i] * b_im[i];
    const double p_im = a_im[i] * b_re[i] - a_re[i] * b_im[i];
    out_re[i] = out_re[i] + w[i] * p_re;
    out_im[i] = out_im[i] + w[i] * p_im;
  }
}

double dot_scalar(std::size_t n, const double* a, const double* b) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void resolvent_accumulate_scalar(std::size_t n, const double* x, double lambda_re,
                                 double lambda_im, double c_re, double c_im, double* out_re,
                                 double* out_im) {
  const double d_im = -lambda_im;
  for (std::size_t i = 0; i < n; ++i) {
    const double d_re = x[i] - lambda_re;
    const double den = d_re * d_re + d_im * d_im;
    const double num_re = c_re * d_re + c_im * d_im;
    const double num_im = c_im * d_re - c_re * d_im;
    out_re[i] = out_re[i] + num_re / den;
    out_im[i] = out_im[i] + num_im / den;
  }
}

}  // namespace

const KernelTable kScalarTable{Isa::Scalar, &accumulate_weighted_product_scalar, &dot_scalar,
                               &resolvent_accumulate_scalar};

}  // namespace kcl::simd::detail
