#include <doctest.h>

#include <cmath>
#include <vector>

#include "kcl/eigenspectral.hpp"
#include "kcl/error.hpp"

using namespace kcl;

namespace {
const ModelWeight r;
const SpectralConfig cfg;
}  // namespace

TEST_CASE("spectral intervals") {
  const auto b = SpectralInterval::bounded({1.0, 3.0, false, true});
  CHECK(!b.contains(1.0));
  CHECK(b.contains(3.0));
  const auto c = SpectralInterval::complement({1.0, 3.0, false, true});
  CHECK(c.contains(1.0));
  CHECK(!c.contains(2.0));
  CHECK(SpectralInterval::real_line().contains(-1e300));
  CHECK(!SpectralInterval::empty().contains(0.0));
  CHECK_THROWS_AS(SpectralInterval::bounded({3.0, 1.0, false, true}), Error);
}

TEST_CASE("E acts by multiplication") {
  const TestFunction g0 = make_g_tau(0.0, r);
  const TestFunction gk = apply_E(SpectralInterval::bounded({1.0, 4.0, false, true}), g0);
  CHECK(gk(2.0) == g0(2.0));
  CHECK(gk(-2.0) == cplx{0.0, 0.0});
  CHECK(gk(5.0) == cplx{0.0, 0.0});
}

TEST_CASE("Ritz norm estimates") {
  for (double a : {0.0, 0.5, 1.0, 2.0}) {
    const double sym = estimate_projection_norm(SpectralInterval::bounded({-8.0, 8.0, true, true}),
                                                a, r, {}, cfg);
    CHECK(sym == doctest::Approx(1.0).epsilon(1e-6));
    for (double k : {2.0, 10.0, 64.0}) {
      const double est = estimate_projection_norm(
          SpectralInterval::bounded({1.0, k, false, true}), a, r, {}, cfg);
      const double exact = std::sqrt(std::pow(k, a) + 1.0);
      CHECK(est <= exact * (1.0 + 1e-12));
      CHECK(est == doctest::Approx(exact).epsilon(1e-6));
    }
  }
  // (10 - 1) / c_2 with c_2 = 2 (1 + ln(1 + sqrt 2) - sqrt 2)
  const double bound = 9.63267352210979786;
  CHECK(estimate_projection_norm(SpectralInterval::bounded({1.0, 10.0, false, true}), 2.0, r, {},
                                 cfg) >= bound);
  CHECK(estimate_projection_norm(SpectralInterval::bounded({-0.5, 0.5, false, false}), 1.0, r, {},
                                 cfg) == 0.0);
}

TEST_CASE("growth curve and classification") {
  std::vector<double> ks;
  for (double k = 2.0; k <= 4096.0; k *= 2.0) ks.push_back(k);
  const GrowthCurve two = growth_curve(2.0, ks, r, {}, cfg);
  CHECK(two.samples.size() == ks.size());
  CHECK(two.samples[2].paper_lower_bound ==
        doctest::Approx((8.0 - 1.0) / 0.934320049292895952).epsilon(1e-12));
  CHECK(two.fitted_exponent == doctest::Approx(1.0).epsilon(0.15));
  const auto v2 = classify_infinity(two, cfg);
  CHECK(v2.classification == Classification::Singular);

  const GrowthCurve zero = growth_curve(0.0, ks, r, {}, cfg);
  const auto v0 = classify_infinity(zero, cfg);
  CHECK(v0.classification == Classification::Regular);
  REQUIRE(v0.bounded_witness);
  CHECK(*v0.bounded_witness <= std::sqrt(2.0) + 1.0 + 1e-6);
  for (const auto& s : zero.samples) CHECK(s.paper_lower_bound == 0.0);

  const std::vector<double> short_ks{2.0, 4.0, 8.0};
  CHECK_THROWS_AS(classify_infinity(growth_curve(1.0, short_ks, r, {}, cfg), cfg), Error);
}

TEST_CASE("loglog slope") {
  const std::vector<double> x{1.0, 2.0, 4.0, 8.0}, y{3.0, 6.0, 12.0, 24.0};
  CHECK(loglog_slope(x, y) == doctest::Approx(1.0).epsilon(1e-12));
}
