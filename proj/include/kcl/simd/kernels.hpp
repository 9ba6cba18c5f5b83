#pragma once

// Data-parallel inner loops shared by the quadrature and contour code.
//
// Every kernel exists as a scalar reference and as an AVX2 variant. The
// variant is picked once at runtime from the CPU features; setting
// KCL_SIMD=scalar in the environment forces the reference path.
//
// Elementwise kernels are bit-identical across variants (no FMA contraction,
// same operation order). Reductions differ only by summation order.

#include <cstddef>
#include <span>
#include <string_view>

namespace kcl::simd {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

struct KernelTable {
  Isa isa;
  // out[i] += w[i] * a[i] * conj(b[i]) for split complex arrays.
  void (*accumulate_weighted_product)(std::size_t n, const double* w, const double* a_re,
                                      const double* a_im, const double* b_re,
                                      const double* b_im, double* out_re, double* out_im);
  double (*dot)(std::size_t n, const double* a, const double* b);
  // out[i] += c / (x[i] - lambda)
  void (*resolvent_accumulate)(std::size_t n, const double* x, double lambda_re,
                               double lambda_im, double c_re, double c_im, double* out_re,
                               double* out_im);
};

bool available(Isa isa) noexcept;
const KernelTable& table(Isa isa);
const KernelTable& active() noexcept;

namespace detail {
extern const KernelTable kScalarTable;
#if defined(KCL_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif
}  // namespace detail

struct SplitComplexView {
  std::span<const double> re;
  std::span<const double> im;
};

struct SplitComplexSpan {
  std::span<double> re;
  std::span<double> im;
};

void accumulate_weighted_product(std::span<const double> w, SplitComplexView a,
                                 SplitComplexView b, SplitComplexSpan out,
                                 const KernelTable& k = active());

double dot(std::span<const double> a, std::span<const double> b,
           const KernelTable& k = active());

void resolvent_accumulate(std::span<const double> x, double lambda_re, double lambda_im,
                          double c_re, double c_im, SplitComplexSpan out,
                          const KernelTable& k = active());

}  // namespace kcl::simd
