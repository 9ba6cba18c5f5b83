#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kcl/error.hpp"
#include "kcl/forms.hpp"

using namespace kcl;

namespace {
const ModelWeight r;
const QuadratureConfig cfg;
}  // namespace

TEST_CASE("frozen inner products") {
  const TestFunction f1 = make_f_tau(1.0, r);
  const auto om = inner_product(r, InnerProductKind::Omega, 0.5, f1, f1, cfg);
  REQUIRE(om.trusted());
  CHECK(om.value.real() == doctest::Approx(8.0).epsilon(1e-9));

  const TestFunction chi = TestFunction::indicator({1.0, 2.0, false, true});
  const auto t0 = t_alpha_pos(r, chi, chi, 0.0, cfg);
  CHECK(t0.value.real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));

  const TestFunction mix = make_g_tau(0.0, r) + f1;
  const auto lim = t_alpha_indef(r, mix, mix, 1.0, cfg);
  REQUIRE(lim.trusted());
  CHECK(lim.value.real() == doctest::Approx(16.0).epsilon(1e-9));
}

TEST_CASE("odd part of the right truncation") {
  // 2 (g_{k,o}, g_{k,o})_{omega_2} with g_k = chi_(1,4] g_0 equals 3
  const TestFunction g4 = restrict_to(make_g_tau(0.0, r), {1.0, 4.0, false, true});
  const TestFunction o = odd_part(g4);
  const auto v = inner_product(r, InnerProductKind::Omega, 2.0, o, o, cfg);
  CHECK(2.0 * v.value.real() == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("S is an involution and J carries the indefinite form") {
  const TestFunction f = TestFunction::indicator({-3.0, -1.5, false, true}, {1.0, 0.5}) +
                         TestFunction::indicator({2.0, 5.0, true, false}, -2.0);
  const TestFunction g = TestFunction::indicator({1.2, 4.0, false, true}, {0.0, 1.0});
  for (double a : {0.0, 0.5, 1.0, 2.0}) {
    const TestFunction ss = apply_S_alpha(apply_S_alpha(f, a), a);
    for (double x : {-4.0, -2.5, -1.7, 1.1, 2.5, 4.5, 6.0}) {
      CHECK(std::abs(ss(x) - f(x)) <= 1e-12 * (1.0 + std::pow(std::abs(x), a)));
    }
    const auto lhs = t_alpha_indef(r, f, g, a, cfg);
    const auto rhs = t_alpha_pos(r, apply_J_alpha(f, a), g, a, cfg);
    CHECK(std::abs(lhs.value - rhs.value) < 1e-10);
    const auto [fp, fm] = project_pm(f, a);
    const auto cross = t_alpha_pos(r, fp, fm, a, cfg);
    CHECK(std::abs(cross.value) < 1e-10);
  }
}

TEST_CASE("S rejects full-support input") {
  CHECK_THROWS_AS(apply_S_alpha(make_g_tau(0.0, r), 1.0), Error);
  CHECK_THROWS_AS(apply_Q_alpha(make_g_tau(0.0, r), 2.5), Error);
}

TEST_CASE("g_0 has zero indefinite form at every truncation") {
  const TestFunction g0 = make_g_tau(0.0, r);
  for (double k : {2.0, 17.0, 1e4}) {
    const TestFunction gk = truncate(g0, k);
    CHECK(t_alpha_indef(r, gk, gk, 1.0, cfg).value == cplx{0.0, 0.0});
  }
}
