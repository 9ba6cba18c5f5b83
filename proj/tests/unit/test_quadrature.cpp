#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "kcl/gauss_legendre.hpp"
#include "kcl/model_space.hpp"
#include "kcl/quadrature.hpp"

using namespace kcl;

TEST_CASE("gauss-legendre is exact to degree 2n-1") {
  const auto& rule = gauss_legendre(16);
  double sum = 0.0, m30 = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i];
    m30 += rule.weights[i] * std::pow(rule.nodes[i], 30);
  }
  CHECK(sum == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(m30 == doctest::Approx(2.0 / 31.0).epsilon(1e-13));
}

TEST_CASE("half-line integrals") {
  const QuadratureConfig cfg;
  const auto conv = integrate_half_line([](double x) { return 1.0 / (x * x); }, 2.0, cfg);
  CHECK(conv.status == Status::Converged);
  CHECK(conv.value.real() == doctest::Approx(0.5).epsilon(1e-9));

  const auto slow = integrate_half_line([](double x) { return std::pow(x, -1.5); }, 1.0, cfg);
  CHECK(slow.status == Status::Converged);
  CHECK(slow.value.real() == doctest::Approx(2.0).epsilon(1e-8));

  const auto log = integrate_half_line([](double x) { return 1.0 / x; }, 1.0, cfg);
  CHECK(log.status == Status::Diverged);
  const auto grow = integrate_half_line([](double x) { return std::sqrt(x); }, 1.0, cfg);
  CHECK(grow.status == Status::Diverged);
}

TEST_CASE("tail exponent regression") {
  // partial integrals of x^{-3} from 1: 1/2 - 1/(2k^2)
  std::vector<TailSample> s;
  for (double k = 2.0; k <= 256.0; k *= 2.0) s.push_back({k, 0.5 - 0.5 / (k * k)});
  CHECK(estimate_tail_exponent(s, QuadratureConfig{}) == doctest::Approx(-3.0).epsilon(1e-9));
}

TEST_CASE("weighted integrals of model functions") {
  const ModelWeight r;
  const QuadratureConfig cfg;
  const auto abs_r = DerivedWeight::abs_r(r);
  const TestFunction chi = TestFunction::indicator({1.0, 2.0, false, true});
  const auto one = integrate_weighted(chi, chi, abs_r, cfg);
  CHECK(one.status == Status::Converged);
  CHECK(one.value.real() == doctest::Approx(1.0).epsilon(1e-14));

  // g_0^2 = 1/|x| on |x| > 1: logarithmic divergence
  const TestFunction g0 = make_g_tau(0.0, r);
  CHECK(integrate_weighted(g0, g0, abs_r, cfg).status == Status::Diverged);

  // f_1^2 = |x|^{-3/2}: 2 * 2 = 4
  const TestFunction f1 = make_f_tau(1.0, r);
  const auto f = integrate_weighted(f1, f1, abs_r, cfg);
  CHECK(f.status == Status::Converged);
  CHECK(f.value.real() == doctest::Approx(4.0).epsilon(1e-8));
}

TEST_CASE("symmetric principal limit cancels odd integrands") {
  const ModelWeight r;
  const QuadratureConfig cfg;
  const TestFunction g0 = make_g_tau(0.0, r);
  // g_0^2 r is odd: every symmetric truncation vanishes
  const auto v = symmetric_principal_limit(g0, g0, r, cfg);
  CHECK(v.status == Status::Converged);
  CHECK(v.value == cplx{0.0, 0.0});
}

TEST_CASE("config validation") {
  QuadratureConfig cfg;
  cfg.doublings = 3;
  CHECK_THROWS(cfg.validate());
  cfg = {};
  cfg.nodes_per_panel = 4;
  CHECK_THROWS(cfg.validate());
}
