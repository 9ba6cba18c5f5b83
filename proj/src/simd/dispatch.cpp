#include <cassert>
#include <cstdlib>
#include <cstring>

#include "kcl/error.hpp"
#include "kcl/simd/kernels.hpp"

namespace kcl::simd {

std::string_view to_string(Isa isa) noexcept {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

bool available(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(KCL_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!available(isa)) {
    throw Error(ErrorCode::InvalidArgument,
                "kernel variant " + std::string(to_string(isa)) + " not available on this CPU");
  }
#if defined(KCL_HAVE_AVX2)
  if (isa == Isa::Avx2) return detail::kAvx2Table;
#endif
  return detail::kScalarTable;
}

namespace {

const KernelTable& select() noexcept {
  const char* forced = std::getenv("KCL_SIMD");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return detail::kScalarTable;
#if defined(KCL_HAVE_AVX2)
  if (available(Isa::Avx2)) return detail::kAvx2Table;
#endif
  return detail::kScalarTable;
}

}  // namespace

const KernelTable& active() noexcept {
  static const KernelTable& selected = select();
  return selected;
}

void accumulate_weighted_product(std::span<const double> w, SplitComplexView a,
                                 SplitComplexView b, SplitComplexSpan out,
                                 const KernelTable& k) {
  const std::size_t n = w.size();
  assert(a.re.size() == n && a.im.size() == n && b.re.size() == n && b.im.size() == n);
  assert(out.re.size() == n && out.im.size() == n);
  k.accumulate_weighted_product(n, w.data(), a.re.data(), a.im.data(), b.re.data(), b.im.data(),
                                out.re.data(), out.im.data());
}

double dot(std::span<const double> a, std::span<const double> b, const KernelTable& k) {
  assert(a.size() == b.size());
  return k.dot(a.size(), a.data(), b.data());
}

void resolvent_accumulate(std::span<const double> x, double lambda_re, double lambda_im,
                          double c_re, double c_im, SplitComplexSpan out, const KernelTable& k) {
  assert(out.re.size() == x.size() && out.im.size() == x.size());
  k.resolvent_accumulate(x.size(), x.data(), lambda_re, lambda_im, c_re, c_im, out.re.data(),
                         out.im.data());
}

}  // namespace kcl::simd
