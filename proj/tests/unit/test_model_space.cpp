#include <doctest.h>

#include <cmath>
#include <vector>

#include "kcl/error.hpp"
#include "kcl/model_space.hpp"

using namespace kcl;

TEST_CASE("default weight") {
  const ModelWeight r;
  CHECK(r(0.5) == 0.0);
  CHECK(r(-1.0) == 0.0);  // the gap is closed
  CHECK(r(3.0) == 1.0);
  CHECK(r(-3.0) == -1.0);
  const ModelWeight r2(2.0, 0.5);
  CHECK(r2(4.0) == doctest::Approx(2.0));
  CHECK(r2(-4.0) == doctest::Approx(-2.0));
  CHECK_THROWS_AS(ModelWeight(0.0, 0.0), Error);
  CHECK_THROWS_AS(ModelWeight(1.0, -1.0), Error);
}

TEST_CASE("derived weights") {
  const ModelWeight r;
  const auto eta0 = DerivedWeight::eta(r, 0.0);
  CHECK(eta0(5.0) == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));
  const auto om = DerivedWeight::omega(r, 2.0);
  CHECK(om(3.0) == doctest::Approx(3.0));
  CHECK(DerivedWeight::r_plus(r)(-3.0) == doctest::Approx(3.0));
  CHECK(DerivedWeight::r_minus(r)(4.0) == doctest::Approx(0.25));
  CHECK(DerivedWeight::eta_tilde(r, 2.0)(4.0) == doctest::Approx(0.25));
  for (double a : {0.5, 1.0, 2.0}) {
    const auto eta = DerivedWeight::eta(r, a);
    CHECK(eta(0.9) == 0.0);
    // eta_alpha = |r| / (sqrt(u^2 + 1) + u), u = |x|^{alpha/2}
    const double u = std::pow(7.0, 0.5 * a);
    CHECK(eta(-7.0) == doctest::Approx(1.0 / (std::sqrt(u * u + 1.0) + u)).epsilon(1e-14));
  }
}

TEST_CASE("witness functions") {
  const ModelWeight r;
  const TestFunction f1 = make_f_tau(1.0, r);
  const TestFunction g0 = make_g_tau(0.0, r);
  CHECK(f1(2.0).real() == doctest::Approx(std::pow(2.0, -0.75)).epsilon(1e-15));
  CHECK(f1(-2.0).real() == doctest::Approx(-std::pow(2.0, -0.75)).epsilon(1e-15));
  CHECK(g0(4.0).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g0(0.5).real() == 0.0);
  CHECK(f1.parity() == Parity::Odd);
  CHECK(g0.parity() == Parity::Even);
  REQUIRE(f1.tail_exponent());
  CHECK(*f1.tail_exponent() == doctest::Approx(-0.75));
  REQUIRE(g0.tail_exponent());
  CHECK(*g0.tail_exponent() == doctest::Approx(-0.5));
  const std::vector<double> xs{1.5, 2.0, 7.0, 100.0};
  CHECK(parity_holds(f1, xs));
  CHECK(parity_holds(g0, xs));
}

TEST_CASE("truncation") {
  const ModelWeight r;
  const TestFunction g0 = make_g_tau(0.0, r);
  const TestFunction t = truncate(g0, 4.0);
  CHECK(t(5.0).real() == 0.0);
  CHECK(t(2.0) == g0(2.0));
  CHECK(t(-4.0) == g0(-4.0));
  REQUIRE(t.support_radius());
  CHECK(*t.support_radius() == 4.0);
  const TestFunction tt = truncate(t, 4.0);
  for (double x : {-5.0, -4.0, -2.0, 1.5, 3.9, 4.0, 4.1}) CHECK(tt(x) == t(x));
  CHECK_THROWS_AS(truncate(g0, 0.0), Error);
}

TEST_CASE("parity parts") {
  const TestFunction f = TestFunction::indicator({1.0, 3.0, false, true}, {2.0, 1.0});
  const TestFunction e = even_part(f), o = odd_part(f);
  for (double x : {-2.5, -1.5, 1.5, 2.5, 4.0}) {
    CHECK(std::abs(e(x) + o(x) - f(x)) < 1e-15);
    CHECK(e(x) == e(-x));
    CHECK(o(x) == -o(-x));
  }
}
