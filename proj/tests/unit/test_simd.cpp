#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "kcl/simd/kernels.hpp"

using namespace kcl::simd;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("scalar table is always available") {
  CHECK(available(Isa::Scalar));
  CHECK(table(Isa::Scalar).isa == Isa::Scalar);
}

TEST_CASE("avx2 kernels match the scalar reference") {
  if (!available(Isa::Avx2)) {
    MESSAGE("AVX2 not available on this CPU; equivalence not exercised");
    return;
  }
  const KernelTable& s = table(Isa::Scalar);
  const KernelTable& v = table(Isa::Avx2);
  std::mt19937_64 rng(7);
  // odd lengths exercise the remainder loops
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 16u, 33u, 1001u}) {
    const auto w = random_vec(rng, n), ar = random_vec(rng, n), ai = random_vec(rng, n);
    const auto br = random_vec(rng, n), bi = random_vec(rng, n);
    auto sr = random_vec(rng, n), si = random_vec(rng, n);
    auto vr = sr, vi = si;
    accumulate_weighted_product(w, {ar, ai}, {br, bi}, {sr, si}, s);
    accumulate_weighted_product(w, {ar, ai}, {br, bi}, {vr, vi}, v);
    CHECK(same_bits(sr, vr));
    CHECK(same_bits(si, vi));

    const double ds = dot(w, ar, s), dv = dot(w, ar, v);
    double mag = 0.0;
    for (std::size_t i = 0; i < n; ++i) mag += std::abs(w[i] * ar[i]);
    CHECK(std::abs(ds - dv) <= 1e-15 * (1.0 + mag) * static_cast<double>(n + 1));

    auto rr = random_vec(rng, n), ri = random_vec(rng, n);
    auto qr = rr, qi = ri;
    resolvent_accumulate(ar, 0.3, 1e-3, 0.7, -0.2, {rr, ri}, s);
    resolvent_accumulate(ar, 0.3, 1e-3, 0.7, -0.2, {qr, qi}, v);
    CHECK(same_bits(rr, qr));
    CHECK(same_bits(ri, qi));
  }
}

TEST_CASE("resolvent kernel value") {
  std::vector<double> x{2.0}, re{0.0}, im{0.0};
  resolvent_accumulate(x, 1.0, 1.0, 1.0, 0.0, {re, im}, table(Isa::Scalar));
  // 1 / (2 - (1 + i)) = (1 + i) / 2
  CHECK(re[0] == doctest::Approx(0.5));
  CHECK(im[0] == doctest::Approx(0.5));
}
